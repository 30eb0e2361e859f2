"""Weighted molecular graph, vertex centers, Hooke potential, and the
restricted-sample-space membership test.

Vertices are dense integer ids.  Each undirected edge carries a desired
distance W and a spring constant h; W = 0 is allowed (zero-rest-length
auxiliary springs), h must be positive.  A conformation is an (n, d)
coordinate array, d = 2 or 3.
"""

import math

import numpy as np


class WeightedGraph:
    """Adjacency-list weighted graph with per-edge (W, h)."""

    def __init__(self, n_vertices, dim=3):
        if dim < 1:
            raise ValueError("dim must be positive")
        self.n = n_vertices
        self.dim = dim
        self.adj = [[] for _ in range(n_vertices)]  # per-vertex [(v, W, h)]

    def add_vertex(self):
        self.adj.append([])
        self.n += 1
        return self.n - 1

    def add_edge(self, u, v, W, h=1.0):
        if u == v:
            raise ValueError("self loops are not allowed")
        if W < 0 or h <= 0:
            raise ValueError("need W >= 0 and h > 0")
        for (w, _, _) in self.adj[u]:
            if w == v:
                raise ValueError(f"edge ({u}, {v}) already present")
        self.adj[u].append((v, float(W), float(h)))
        self.adj[v].append((u, float(W), float(h)))

    def edges(self):
        """Each undirected edge once, as (u, v, W, h) with u < v."""
        for u in range(self.n):
            for (v, W, h) in self.adj[u]:
                if u < v:
                    yield u, v, W, h

    def degree(self, u):
        return len(self.adj[u])


def center(graph, conf, u):
    """Spring-weighted center of vertex u.

    Each neighbor v at positive distance contributes its ideal point
    a_v + (W/r)(a_u - a_v); coincident neighbors contribute through the
    accumulators f (sum of h*W) and q (sum of h), pushed along the unit
    direction from a_u toward the partial center.  Degenerate cases return
    a_u itself.
    """
    a_u = conf[u]
    t = 0.0
    q = 0.0
    f = 0.0
    y = np.zeros(graph.dim)
    for (v, W, h) in graph.adj[u]:
        z = a_u - conf[v]
        r = math.sqrt(float(z @ z))
        if r > 0.0:
            y += h * (conf[v] + (W / r) * z)
            t += h
        else:
            f += h * W
            q += h
    if q > 0.0 and t > 0.0:
        z = y / t - a_u
        r = math.sqrt(float(z @ z))
        if r > 0.0:
            y = y + q * a_u + (f / r) * z
            y = (t / (t + q)) * y
    if t > 0.0:
        return y / t
    return a_u.copy()


def hooke_potential(graph, conf):
    """Sum over undirected edges of (h/2)(edge length - W)^2."""
    total = 0.0
    for u, v, W, h in graph.edges():
        r = float(np.linalg.norm(conf[u] - conf[v]))
        total += 0.5 * h * (r - W) ** 2
    return total


def in_restricted_space(graph, conf, S):
    """True iff every vertex with positive radius lies within S(u) of its
    center; vertices with S(u) = 0 are exempt."""
    for u in range(graph.n):
        su = S[u]
        if su <= 0.0:
            continue
        if np.linalg.norm(conf[u] - center(graph, conf, u)) >= su:
            return False
    return True


# ---------------------------------------------------------------------------
# Line-oriented text format:
#   dim <d>
#   vertex <id> [x y [z]]
#   edge <u> <v> <W> <h>
#   radius <id> <S>
#   chi <a> <b> <c> <d> <+1|-1>
# '#' starts a comment.

def load_graph_file(path_or_lines):
    """Parse the graph text format.

    Returns (graph, conf, radii, chi_entries); conf is None unless every
    vertex line carried coordinates, radii default to 0, and chi_entries is
    a list of (tuple, sign) for the chirotope layer.
    """
    if isinstance(path_or_lines, (list, tuple)):
        lines = path_or_lines
    else:
        with open(path_or_lines) as fh:
            lines = fh.readlines()

    dim = 3
    vertices = {}
    edges = []
    radii = {}
    chis = []
    for ln, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        kw = parts[0]
        try:
            if kw == "dim":
                dim = int(parts[1])
            elif kw == "vertex":
                vid = int(parts[1])
                coords = tuple(float(x) for x in parts[2:]) or None
                vertices[vid] = coords
            elif kw == "edge":
                edges.append((int(parts[1]), int(parts[2]),
                              float(parts[3]), float(parts[4])))
            elif kw == "radius":
                radii[int(parts[1])] = float(parts[2])
            elif kw == "chi":
                tup = tuple(int(x) for x in parts[1:-1])
                chis.append((tup, int(parts[-1])))
            else:
                raise ValueError(f"unknown keyword {kw!r}")
        except (IndexError, ValueError) as exc:
            raise ValueError(f"graph file line {ln}: {raw.strip()!r}: {exc}")

    if not vertices:
        raise ValueError("graph file defines no vertices")
    n = max(vertices) + 1
    if set(vertices) != set(range(n)):
        raise ValueError("vertex ids must be dense 0..n-1")
    graph = WeightedGraph(n, dim=dim)
    for (u, v, W, h) in edges:
        graph.add_edge(u, v, W, h)

    conf = None
    if all(c is not None for c in vertices.values()):
        conf = np.zeros((n, dim))
        for vid, coords in vertices.items():
            if len(coords) != dim:
                raise ValueError(f"vertex {vid}: expected {dim} coordinates")
            conf[vid] = coords

    S = np.zeros(n)
    for vid, s in radii.items():
        S[vid] = s
    return graph, conf, S, chis


def dump_graph_file(graph, conf=None, S=None, chis=()):
    """Serialize to the graph text format (inverse of load_graph_file)."""
    out = [f"dim {graph.dim}"]
    for u in range(graph.n):
        if conf is not None:
            coords = " ".join(repr(float(x)) for x in conf[u])
            out.append(f"vertex {u} {coords}")
        else:
            out.append(f"vertex {u}")
    for (u, v, W, h) in graph.edges():
        out.append(f"edge {u} {v} {float(W)!r} {float(h)!r}")
    if S is not None:
        for u in range(graph.n):
            if S[u] != 0.0:
                out.append(f"radius {u} {float(S[u])!r}")
    for tup, sign in chis:
        out.append("chi " + " ".join(str(x) for x in tup) + f" {sign:+d}")
    return "\n".join(out) + "\n"


def conformation_to_csv(conf):
    """CSV export with header id,x,y[,z] at round-trip precision."""
    dim = conf.shape[1]
    header = "id," + ",".join("xyz"[:dim])
    rows = [header]
    for i, p in enumerate(conf):
        rows.append(str(i) + "," + ",".join(repr(float(x)) for x in p))
    return "\n".join(rows) + "\n"

"""Bundled example systems.

Builders for the instances used by the command line and the test suite:
the planar jam instance, the K4 unit tetrahedron, a poly-threonine chain
with authored chirality bases, a poly-alanine alpha helix with hydrogen
bond constraint edges, and the 16-atom polymer demo configuration.  Each
builder returns plain toolkit objects; `builtin_graph` exposes them under
"builtin:<name>" pseudo-paths for the CLI.
"""

import itertools
import math

import numpy as np

from .chirotope import (PartialChirotope, RealizationRequest, chi_of_points,
                        realize_lp)
from .graph import WeightedGraph


# ---------------------------------------------------------------------------
# Jam instance: four vertices on a plane whose chirality constraint blocks
# plain centering but yields to noisy centering with a large move cap.

def jam_instance():
    """(graph, conf, S, chirotope).  The (B, C, D) tuple is constrained
    counter-clockwise while the start conformation is clockwise, so pure
    centering with chirality checks freezes B, C and D."""
    g = WeightedGraph(4, dim=2)
    g.add_edge(0, 1, 5.0, 1.0)    # A-B
    g.add_edge(0, 2, 5.0, 1.0)    # A-C
    g.add_edge(1, 2, 6.0, 1.0)    # B-C
    g.add_edge(0, 3, 0.01, 1.0)   # A-D
    conf = np.array([[0.0, 0.0], [4.0, 3.0], [4.0, -3.0], [0.0, 5.0]])
    S = np.full(4, 0.001)
    chi = PartialChirotope(3)
    chi.set((1, 2, 3), +1)
    return g, conf, S, chi


# recommended vibrant parameters for the jam instance: the escape needs far
# jumps comparable to the initial geometry (C * S just under |D - A|) and a
# generous noise factor so the jump direction varies enough to cross
JAM_VIBRANT_C = 3700.0
JAM_VIBRANT_NOISE = 2.0


def k4_tetrahedron():
    """(graph, conf, S): complete graph on 4 vertices, all desired
    distances 1; the start conformation is a squashed random-ish cluster."""
    g = WeightedGraph(4, dim=3)
    for i in range(4):
        for j in range(i + 1, 4):
            g.add_edge(i, j, 1.0, 1.0)
    conf = np.array([[0.0, 0.0, 0.0], [0.3, 0.0, 0.0],
                     [0.0, 0.35, 0.0], [0.1, 0.1, 0.25]])
    S = np.full(4, 0.01)
    return g, conf, S


# ---------------------------------------------------------------------------
# Poly-threonine chain.  Residue atom order (PDB-style names):
#   H N H CA CB H OG1 H CG2 H H H C O
# Indices within a residue:

THR_ATOMS = ["H", "N", "H", "CA", "CB", "H", "OG1", "H", "CG2",
             "H", "H", "H", "C", "O"]
THR_N, THR_CA, THR_CB = 1, 3, 4
THR_H_CA = 2
THR_H_CB, THR_OG1, THR_CG2 = 5, 6, 8
THR_C, THR_O = 12, 13


def _tetrahedral_frame(axis, phase):
    """Four roughly tetrahedral unit directions around `axis`."""
    axis = np.asarray(axis, dtype=float)
    axis /= np.linalg.norm(axis)
    # any perpendicular pair
    ref = np.array([0.0, 0.0, 1.0]) if abs(axis[2]) < 0.9 else np.array([1.0, 0.0, 0.0])
    e1 = np.cross(axis, ref)
    e1 /= np.linalg.norm(e1)
    e2 = np.cross(axis, e1)
    dirs = [axis]
    for k in range(3):
        t = phase + 2.0 * math.pi * k / 3.0
        dirs.append(-axis / 3.0 + math.sqrt(8.0) / 3.0
                    * (math.cos(t) * e1 + math.sin(t) * e2))
    return [d / np.linalg.norm(d) for d in dirs]


def select_center_bases(conf, n_points, centers):
    """Choose 3 ordered bases per chiral center, signed from the model
    conformation, such that the circle-placement LP stays feasible.

    `centers` lists (center, substituents) sharing atoms only within the
    list; candidate bases are (center, 3 of the 4 substituents), and the
    triples are picked by probing the realization LP for this group alone
    (groups over disjoint atoms combine without interaction).
    """
    candidate_triples = []
    for center, subs in centers:
        quads = [(center,) + c for c in itertools.combinations(tuple(subs), 3)]
        candidate_triples.append(list(itertools.combinations(quads, 3)))
    for combo in itertools.product(*candidate_triples):
        bases = []
        for triple in combo:
            for tup in triple:
                sign = chi_of_points(conf, tup, rank=4)
                if sign == 0:
                    raise RuntimeError(f"degenerate model tuple {tup}")
                bases.append((tup, sign))
        if realize_lp(RealizationRequest(n=n_points, bases=bases)).feasible:
            return bases
    raise RuntimeError("no realizable base triple combination for group "
                       f"{[c for c, _ in centers]}")


def thr_chain(n_residues=5):
    """(graph, conf, chirotope): poly-threonine with 14 atoms per residue
    on a coarse helical backbone, bond edges with model distances, and
    3 ordered bases per chiral center (CA and CB) signed from the model
    conformation."""
    n = 14 * n_residues
    conf = np.zeros((n, 3))
    bonds = []

    for r in range(n_residues):
        off = 14 * r
        theta = math.radians(100.0) * r
        ca = np.array([2.3 * math.cos(theta), 2.3 * math.sin(theta), 1.5 * r])
        conf[off + THR_CA] = ca
        out = np.array([math.cos(theta), math.sin(theta), 0.0])
        d_n, d_h, d_cb, d_c = _tetrahedral_frame(out, phase=0.8 + 0.3 * r)
        conf[off + THR_N] = ca + 1.46 * d_n
        conf[off + THR_H_CA] = ca + 1.10 * d_h
        conf[off + THR_CB] = ca + 1.53 * d_cb
        conf[off + THR_C] = ca + 1.52 * d_c
        # amide hydrogen and carbonyl oxygen
        conf[off + 0] = conf[off + THR_N] + 1.01 * (d_n + 0.5 * d_h) / np.linalg.norm(d_n + 0.5 * d_h)
        conf[off + THR_O] = conf[off + THR_C] + 1.23 * (d_c + 0.5 * out) / np.linalg.norm(d_c + 0.5 * out)
        # side chain around CB
        d_ca, d_hb, d_og, d_cg = _tetrahedral_frame(d_cb, phase=1.9 + 0.3 * r)
        cb = conf[off + THR_CB]
        conf[off + THR_H_CB] = cb + 1.10 * d_hb
        conf[off + THR_OG1] = cb + 1.42 * d_og
        conf[off + THR_CG2] = cb + 1.53 * d_cg
        conf[off + 7] = conf[off + THR_OG1] + 0.96 * d_og
        d0, d1, d2, _ = _tetrahedral_frame(d_cg, phase=0.4)
        for k, dd in enumerate((d0, d1, d2)):
            conf[off + 9 + k] = conf[off + THR_CG2] + 1.10 * dd

        bonds += [(off + a, off + b) for a, b in
                  [(0, THR_N), (THR_N, THR_H_CA), (THR_N, THR_CA),
                   (THR_CA, THR_CB), (THR_CA, THR_C),
                   (THR_CB, THR_H_CB), (THR_CB, THR_OG1), (THR_CB, THR_CG2),
                   (THR_OG1, 7), (THR_CG2, 9), (THR_CG2, 10), (THR_CG2, 11),
                   (THR_C, THR_O)]]
        if r + 1 < n_residues:
            bonds.append((off + THR_C, off + 14 + THR_N))

    g = WeightedGraph(n, dim=3)
    for (a, b) in bonds:
        g.add_edge(a, b, float(np.linalg.norm(conf[a] - conf[b])), 1.0)

    chi = PartialChirotope(4)
    for r in range(n_residues):
        off = 14 * r
        centers = [(off + THR_CA, tuple(off + a for a in
                                        (THR_N, THR_H_CA, THR_CB, THR_C))),
                   (off + THR_CB, tuple(off + a for a in
                                        (THR_CA, THR_H_CB, THR_OG1, THR_CG2)))]
        for tup, sign in select_center_bases(conf, n, centers):
            chi.set(tup, sign)
    return g, conf, chi


# ---------------------------------------------------------------------------
# Poly-alanine alpha helix.  Residue atom order:
#   N H CA HA CB HB1 HB2 HB3 C O

ALA_ATOMS = ["N", "H", "CA", "HA", "CB", "HB1", "HB2", "HB3", "C", "O"]
ALA_N, ALA_H, ALA_CA, ALA_HA, ALA_CB = 0, 1, 2, 3, 4
ALA_C, ALA_O = 8, 9


def ala_helix(n_residues=7):
    """(graph, conf, S, chirotope): poly-alanine on an ideal right helix
    with bond edges, hydrogen-bond edges O(i)-H(i+4) and O(i)-N(i+4),
    CA(i)-CA(i+2) edges, and 3 ordered bases per CA center.  All desired
    distances come from the model helix, so the restricted space is
    nonempty by construction."""
    n = 10 * n_residues
    conf = np.zeros((n, 3))
    bonds = []
    for r in range(n_residues):
        off = 10 * r
        theta = math.radians(100.0) * r
        ca = np.array([2.3 * math.cos(theta), 2.3 * math.sin(theta), 1.5 * r])
        out = np.array([math.cos(theta), math.sin(theta), 0.0])
        conf[off + ALA_CA] = ca
        d_n, d_ha, d_cb, d_c = _tetrahedral_frame(out, phase=0.6 + 0.2 * r)
        conf[off + ALA_N] = ca + 1.46 * d_n
        conf[off + ALA_HA] = ca + 1.10 * d_ha
        conf[off + ALA_CB] = ca + 1.53 * d_cb
        conf[off + ALA_C] = ca + 1.52 * d_c
        nh = (d_n + 0.4 * out)
        conf[off + ALA_H] = conf[off + ALA_N] + 1.01 * nh / np.linalg.norm(nh)
        co = (d_c + 0.5 * out)
        conf[off + ALA_O] = conf[off + ALA_C] + 1.23 * co / np.linalg.norm(co)
        hb0, hb1, hb2, _ = _tetrahedral_frame(d_cb, phase=0.9)
        for k, dd in enumerate((hb0, hb1, hb2)):
            conf[off + ALA_CB + 1 + k] = conf[off + ALA_CB] + 1.10 * dd
        bonds += [(off + a, off + b) for a, b in
                  [(ALA_N, ALA_H), (ALA_N, ALA_CA), (ALA_CA, ALA_HA),
                   (ALA_CA, ALA_CB), (ALA_CA, ALA_C), (ALA_C, ALA_O),
                   (ALA_CB, 5), (ALA_CB, 6), (ALA_CB, 7)]]
        if r + 1 < n_residues:
            bonds.append((off + ALA_C, off + 10 + ALA_N))

    # helix constraint edges
    extra = []
    for r in range(n_residues - 4):
        extra.append((10 * r + ALA_O, 10 * (r + 4) + ALA_H))
        extra.append((10 * r + ALA_O, 10 * (r + 4) + ALA_N))
    for r in range(n_residues - 2):
        extra.append((10 * r + ALA_CA, 10 * (r + 2) + ALA_CA))

    g = WeightedGraph(n, dim=3)
    for (a, b) in bonds + extra:
        g.add_edge(a, b, float(np.linalg.norm(conf[a] - conf[b])), 1.0)

    chi = PartialChirotope(4)
    for r in range(n_residues):
        off = 10 * r
        centers = [(off + ALA_CA, tuple(off + a for a in
                                        (ALA_N, ALA_HA, ALA_CB, ALA_C)))]
        for tup, sign in select_center_bases(conf, n, centers):
            chi.set(tup, sign)
    S = np.full(n, 0.3)
    return g, conf, S, chi


# ---------------------------------------------------------------------------

def builtin_graph(name):
    """Resolve a builtin:<name> asset to (graph, conf, S, chirotope)."""
    if name == "jam":
        return jam_instance()
    if name == "k4":
        g, conf, S = k4_tetrahedron()
        return g, conf, S, None
    if name.startswith("thr"):
        n_res = int(name[3:]) if len(name) > 3 else 5
        g, conf, chi = thr_chain(n_res)
        return g, conf, np.full(g.n, 0.3), chi
    if name.startswith("ala"):
        n_res = int(name[3:]) if len(name) > 3 else 7
        return ala_helix(n_res)
    raise ValueError(f"unknown builtin asset {name!r}")

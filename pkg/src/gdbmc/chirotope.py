"""Partial chirotopes: alternating sign maps on vertex tuples, sign
consistency, per-vertex chirality checks, and realization of chirality
constraints through linear programming with circle placement.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .lp import realize_via_dual

_ZERO_TOL = 1e-12


def permutation_sign(tup):
    """Sign of the permutation sorting `tup`; 0 on repeated entries."""
    tup = tuple(tup)
    if len(set(tup)) != len(tup):
        return 0
    sign = 1
    items = list(tup)
    for i in range(len(items)):
        for j in range(i + 1, len(items)):
            if items[i] > items[j]:
                sign = -sign
    return sign


class PartialChirotope:
    """Partially defined alternating sign map of rank r on integer ids.

    Entries are stored for sorted tuples; queries on permuted tuples apply
    the permutation sign (alternating closure).
    """

    def __init__(self, rank):
        if rank < 1:
            raise ValueError("rank must be >= 1")
        self.rank = rank
        self._entries = {}            # sorted tuple -> sign in {-1, +1}
        self._by_vertex = {}          # vertex -> set of sorted tuples

    def __len__(self):
        return len(self._entries)

    def set(self, tup, sign):
        """Record chi(tup) = sign (sign in {-1, +1})."""
        if len(tup) != self.rank:
            raise ValueError(f"tuple length must equal rank {self.rank}")
        if sign not in (-1, 1):
            raise ValueError("sign must be -1 or +1")
        psign = permutation_sign(tup)
        if psign == 0:
            raise ValueError("tuple entries must be distinct")
        key = tuple(sorted(tup))
        canonical = sign * psign
        if key in self._entries and self._entries[key] != canonical:
            raise ValueError(f"conflicting sign for tuple {key}")
        self._entries[key] = canonical
        for v in key:
            self._by_vertex.setdefault(v, set()).add(key)

    def get(self, tup):
        """Stored sign under alternating closure; None if undefined, 0 on
        repeated entries."""
        psign = permutation_sign(tup)
        if psign == 0:
            return 0
        key = tuple(sorted(tup))
        stored = self._entries.get(key)
        if stored is None:
            return None
        return stored * psign

    def entries(self):
        """All stored (sorted_tuple, sign) pairs."""
        return list(self._entries.items())

    def tuples_containing(self, u):
        return sorted(self._by_vertex.get(u, ()))

    @classmethod
    def from_entries(cls, rank, entries):
        chi = cls(rank)
        for tup, sign in entries:
            chi.set(tup, sign)
        return chi


def chi_of_points(conf, tup, rank=None):
    """Sign of the determinant of the tuple's points.

    Rank-(d+1) tuples over d-dimensional points are homogenized by
    prepending a 1; rank-d tuples use the raw coordinates.  Determinants
    with magnitude below 1e-12 report 0.
    """
    conf = np.asarray(conf, dtype=float)
    r = len(tup) if rank is None else rank
    if len(tup) != r:
        raise ValueError("tuple length must equal rank")
    d = conf.shape[1]
    pts = conf[list(tup)]
    if d == r:
        M = pts
    elif d == r - 1:
        M = np.hstack([np.ones((r, 1)), pts])
    else:
        raise ValueError(f"rank {r} incompatible with dimension {d}")
    det = float(np.linalg.det(M))
    if abs(det) < _ZERO_TOL:
        return 0
    return 1 if det > 0 else -1


def check_gp_signs(signs):
    """Whether six bracket signs admit the three-term rank-3 relation
    t1 - t2 + t3 = 0 for some positive bracket magnitudes, with
    t1 = s1*s2, t2 = s3*s4, t3 = s5*s6 (a zero bracket drops its term)."""
    if len(signs) != 6:
        raise ValueError("expected six signs")
    for s in signs:
        if s not in (-1, 0, 1):
            raise ValueError("signs must be -1, 0 or +1")
    terms = [signs[0] * signs[1], -signs[2] * signs[3], signs[4] * signs[5]]
    nonzero = [t for t in terms if t != 0]
    if not nonzero:
        return True
    return min(nonzero) < 0 < max(nonzero)


def check_chirality(chirotope, conf, u):
    """True iff every stored tuple containing u has the stored determinant
    sign (zero counts as a violation)."""
    for key in chirotope.tuples_containing(u):
        if chi_of_points(conf, key, rank=chirotope.rank) != chirotope.get(key):
            return False
    return True


def check_all_chirality(chirotope, conf):
    for key, sign in chirotope.entries():
        if chi_of_points(conf, key, rank=chirotope.rank) != sign:
            return False
    return True


@dataclass
class RealizationRequest:
    """Ordered bases (a, b, c, d) whose oriented volume
    det(x_b - x_a, x_c - x_a, x_d - x_a) must be >= epsilon (sign +1) or
    <= -epsilon (sign -1)."""
    n: int
    bases: list                      # [(tuple, sign)]
    epsilon: float = None            # default (sin(2 pi / n))**3

    def __post_init__(self):
        if self.n < 4:
            raise ValueError("need at least 4 points")
        for tup, sign in self.bases:
            if len(tup) != 4 or len(set(tup)) != 4:
                raise ValueError(f"base {tup} must have 4 distinct members")
            if not all(0 <= v < self.n for v in tup):
                raise ValueError(f"base {tup} out of range")
            if sign not in (-1, 1):
                raise ValueError("base sign must be -1 or +1")
        if self.epsilon is None:
            self.epsilon = math.sin(2.0 * math.pi / self.n) ** 3
        if self.epsilon <= 0:
            raise ValueError("epsilon must be positive")


@dataclass
class Realization:
    feasible: bool
    conf: np.ndarray = None          # (n, 3) coordinates
    residuals: np.ndarray = None     # det - epsilon per base, >= -1e-8
    violated: list = field(default_factory=list)


def _base_coefficients(xy, tup):
    # The oriented volume is linear in the four unknown third coordinates
    # once the circle coordinates are fixed; probe with unit vectors.
    def vol(z):
        pts = np.hstack([xy[list(tup)], z.reshape(4, 1)])
        M = pts[1:] - pts[0]
        return float(np.linalg.det(M))

    coeffs = np.zeros(4)
    for i in range(4):
        e = np.zeros(4)
        e[i] = 1.0
        coeffs[i] = vol(e)
    return coeffs


def circle_coordinates(n):
    """First two coordinates on the unit circle: point i at angle 2 pi i / n."""
    angles = 2.0 * math.pi * np.arange(n) / n
    return np.column_stack([np.cos(angles), np.sin(angles)])


def realize_lp(request):
    """Realize the ordered-base constraints by circle placement plus an LP
    over the third coordinates.

    Points are fixed on the unit circle; each base constraint becomes a
    linear inequality in the unknown nonnegative third coordinates z and
    the system min sum(z), A z >= epsilon is solved through its dual.
    """
    n = request.n
    xy = circle_coordinates(n)
    A = np.zeros((len(request.bases), n))
    for row, (tup, sign) in enumerate(request.bases):
        coeffs = _base_coefficients(xy, tup)
        for pos, vertex in enumerate(tup):
            A[row, vertex] += sign * coeffs[pos]
    out = realize_via_dual(A, request.epsilon)
    if out.status != "optimal":
        # report the constraints of a minimal inconsistent-looking subsystem:
        # with the dual unbounded, the whole system is infeasible
        return Realization(feasible=False, violated=list(request.bases))
    conf = np.hstack([xy, out.x.reshape(n, 1)])
    dets = np.array([sign * _oriented_volume(conf, tup)
                     for tup, sign in request.bases])
    return Realization(feasible=True, conf=conf,
                       residuals=dets - request.epsilon)


def _oriented_volume(conf, tup):
    pts = np.asarray(conf)[list(tup)]
    return float(np.linalg.det(pts[1:] - pts[0]))


def oriented_volume(conf, tup):
    """det(x_b - x_a, x_c - x_a, x_d - x_a) for the base (a, b, c, d)."""
    return _oriented_volume(conf, tup)


def split_vertices(graph, chirotope, victims):
    """Clone each victim vertex once per stored tuple it appears in and
    spread those tuples over the clones; clones are tied together with
    zero-weight edges for later coalescing.

    Returns (graph, chirotope', merge_map) where merge_map maps each clone
    id back to its original vertex.  The graph is mutated in place (clone
    vertices appended); the chirotope is rebuilt.
    """
    merge_map = {}
    current = chirotope.entries()   # ordered tuples with their signs
    for victim in victims:
        containing = [i for i, (tup, _) in enumerate(current) if victim in tup]
        if not containing:
            continue
        ids = [victim]
        for _ in containing[1:]:
            ids.append(graph.add_vertex())
        for cid in ids[1:]:
            merge_map[cid] = victim
        # zero-weight clique ties all clones of one victim together
        for i in range(len(ids)):
            for j in range(i + 1, len(ids)):
                graph.add_edge(ids[i], ids[j], 0.0, 1.0)
        for idx, cid in zip(containing, ids):
            tup, sign = current[idx]
            current[idx] = (tuple(cid if v == victim else v for v in tup), sign)
    new_chi = PartialChirotope.from_entries(chirotope.rank, current)
    return graph, new_chi, merge_map

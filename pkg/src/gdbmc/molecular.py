"""Non-equilibrium molecular MC with directed bead pinning.

A molecule is equipped with artificial bead pairs (each bead tied to an
anchor atom by a zero-rest-length spring), replicated into K = 2j copies
joined by ring springs of constant K, and driven by a loop that pins one
bead of a chosen pair in copy n1 and the other in copy n2 = n1 + j,
picking the assignment from the same distance comparison that directs the
jump processes.  Between pinning decisions the unfrozen coordinates relax
through restricted-space Metropolis trial moves.

The bundled demo is a 16-atom Lennard-Jones/spring polymer with one bead
pair per bond and the second beads chirality-constrained as a right
helix; the directed run drifts along the chain axis while the
unbiased-coin control does not.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .chirotope import PartialChirotope, chi_of_points
from .distgeo import VibrantParams
from .graph import WeightedGraph
from .metropolis import PotentialModel, mc_run


@dataclass
class BeadSpec:
    pairs: list                      # [(anchor_of_bead1, anchor_of_bead2)]
    K: int = 4
    h_a: float = 1.0
    p: list = None                   # pair selection probabilities, uniform if None
    alpha: float = 1.0               # directional probability, 1/2 = unbiased control
    flip_pinning: bool = False       # swap which bead goes to n1 vs n2

    def __post_init__(self):
        if self.K < 2 or self.K % 2 != 0:
            raise ValueError("K must be even and >= 2")
        if not 0.5 <= self.alpha <= 1.0:
            raise ValueError("alpha must be in [1/2, 1]")
        if self.h_a <= 0:
            raise ValueError("h_a must be positive")
        if self.p is None:
            self.p = [1.0 / len(self.pairs)] * len(self.pairs) if self.pairs else []
        if self.pairs and not math.isclose(sum(self.p), 1.0, abs_tol=1e-9):
            raise ValueError("pair probabilities must sum to 1")

    @property
    def j(self):
        return self.K // 2


@dataclass
class EquippedSystem:
    graph: WeightedGraph
    conf: np.ndarray
    spec: BeadSpec
    n_atoms: int
    n_local: int                     # particles per copy (atoms + beads)
    chirotope: PartialChirotope = None
    jumps: int = 0

    def vid(self, copy, local):
        """Global vertex id of a local particle in one copy."""
        return copy * self.n_local + local

    def bead_ids(self, pair_index):
        """Local ids (bead1, bead2) of one added pair."""
        base = self.n_atoms + 2 * pair_index
        return base, base + 1

    def atom_vertices(self):
        return [self.vid(k, i) for k in range(self.spec.K)
                for i in range(self.n_atoms)]


def equip(graph, conf, spec, bead_conf=None, chirotope_entries=()):
    """Replicate a bead-equipped molecule into K ring-coupled copies.

    Beads are appended after the atoms (two per pair, in pair order), each
    tied to its anchor by a W=0 spring of constant h_a.  Every particle is
    joined to the same particle of neighboring copies by W=0 springs of
    constant K (one edge total when K=2).  `chirotope_entries` are
    rank-4 (local_tuple, sign) constraints, replicated per copy.
    """
    n_atoms = graph.n
    conf = np.asarray(conf, dtype=float)
    K = spec.K
    n_local = n_atoms + 2 * len(spec.pairs)
    full = WeightedGraph(n_local * K, dim=graph.dim)

    local_conf = np.zeros((n_local, graph.dim))
    local_conf[:n_atoms] = conf
    for l, (anc1, anc2) in enumerate(spec.pairs):
        if not (0 <= anc1 < n_atoms and 0 <= anc2 < n_atoms):
            raise ValueError(f"pair {l}: anchor out of range")
        b1, b2 = n_atoms + 2 * l, n_atoms + 2 * l + 1
        if bead_conf is not None:
            local_conf[b1] = bead_conf[2 * l]
            local_conf[b2] = bead_conf[2 * l + 1]
        else:
            local_conf[b1] = conf[anc1]
            local_conf[b2] = conf[anc2]

    for k in range(K):
        off = k * n_local
        for (u, v, W, h) in graph.edges():
            full.add_edge(off + u, off + v, W, h)
        for l, (anc1, anc2) in enumerate(spec.pairs):
            b1, b2 = n_atoms + 2 * l, n_atoms + 2 * l + 1
            full.add_edge(off + b1, off + anc1, 0.0, spec.h_a)
            full.add_edge(off + b2, off + anc2, 0.0, spec.h_a)
    # ring springs between copies, one per particle pair of adjacent copies
    for i in range(n_local):
        for k in range(K - 1):
            full.add_edge(k * n_local + i, (k + 1) * n_local + i, 0.0, float(K))
        if K > 2:
            full.add_edge((K - 1) * n_local + i, i, 0.0, float(K))

    full_conf = np.tile(local_conf, (K, 1))
    chi = None
    if chirotope_entries:
        chi = PartialChirotope(4)
        for tup, sign in chirotope_entries:
            for k in range(K):
                chi.set(tuple(k * n_local + v for v in tup), sign)
    return EquippedSystem(graph=full, conf=full_conf, spec=spec,
                          n_atoms=n_atoms, n_local=n_local, chirotope=chi)


def _choose_pair(spec, rng):
    r = rng.uniform()
    acc = 0.0
    for l, pl in enumerate(spec.p):
        acc += pl
        if r < acc:
            return l
    return len(spec.p) - 1


def noneq_step(system, S, model, params, rng, M, pinned=()):
    """One directed pinning step followed by M trial moves of the rest.

    Picks pair l with probability p_l and copies n1 uniform, n2 = n1 + j;
    the bead pinned at n1 vs n2 follows the distance comparison: when
    (d_n1 <= d_n2) agrees with the alpha-coin, bead1 freezes at n1 and
    bead2 at n2, otherwise the copies swap (flip_pinning inverts this).
    `pinned` lists extra permanently frozen vertices.  Returns the frozen
    set and the inner-loop MC report.
    """
    spec = system.spec
    if not spec.pairs:
        raise ValueError("system has no bead pairs")
    l = _choose_pair(spec, rng)
    b1, b2 = system.bead_ids(l)
    K, j = spec.K, spec.j
    n1 = int(rng.uniform() * K)
    n2 = (n1 + j) % K
    d1 = float(np.linalg.norm(system.conf[system.vid(n1, b1)]
                              - system.conf[system.vid(n1, b2)]))
    d2 = float(np.linalg.norm(system.conf[system.vid(n2, b1)]
                              - system.conf[system.vid(n2, b2)]))
    forward = rng.uniform() < spec.alpha
    less = not d1 > d2
    same = (less == forward)
    if spec.flip_pinning:
        same = not same
    if same:
        frozen = {system.vid(n1, b1), system.vid(n2, b2)}
    else:
        frozen = {system.vid(n2, b1), system.vid(n1, b2)}
    frozen.update(pinned)
    sweeps = max(1, M // system.graph.n)
    _, report = mc_run(system.graph, system.conf, S, model, params,
                       system.chirotope, sweeps, rng, frozen=frozen,
                       trace_every=10 ** 9)
    system.jumps += 1
    return frozen, report


# ---------------------------------------------------------------------------
# 16-atom polymer demo

@dataclass
class PolymerConfig:
    n_atoms: int = 16
    K: int = 2
    h_a: float = 5.0      # anchor stiffness; the pinning bias scales like
                          # sqrt(kT * h_a) while bead mobility falls with h_a
    alpha: float = 1.0
    bond_W: float = 1.0
    # the chain's center of mass must stay mobile under single-particle
    # trial moves or the pinned-bead bias cannot convert into drift: soft
    # bonds, moderate temperature, and a purely repulsive (cut at the
    # minimum) Lennard-Jones that keeps the chain extended without
    # driving it to coil
    bond_h: float = 10.0
    lj_eps: float = 0.2
    lj_sigma: float = 1.0
    lj_cutoff: float = 1.122462      # 2^(1/6) * sigma, repulsive only
    kT: float = 0.2
    S_atom: float = 0.4
    S_bead: float = 0.4
    helix_radius: float = 0.5
    helix_turn: float = 1.2          # radians advanced per bead, + = right helix
    jumps: int = 400
    M: int = None                    # trial moves per jump, default 2 * vertices
    fix_last: bool = False


def build_polymer(config):
    """Equipped linear polymer: atoms on the x axis, one bead pair per
    bond, second beads on a right helix with rank-4 chirality constraints
    on consecutive second-bead quadruples."""
    n = config.n_atoms
    g = WeightedGraph(n, dim=3)
    for i in range(n - 1):
        g.add_edge(i, i + 1, config.bond_W, config.bond_h)
    conf = np.zeros((n, 3))
    conf[:, 0] = np.arange(n) * config.bond_W

    pairs = [(i, i + 1) for i in range(n - 1)]
    bead_conf = np.zeros((2 * len(pairs), 3))
    rho, turn = config.helix_radius, config.helix_turn
    for l, (a1, a2) in enumerate(pairs):
        bead_conf[2 * l] = conf[a1] + (0.0, rho, 0.0)
        theta = turn * l
        bead_conf[2 * l + 1] = (conf[a2][0],
                                rho * math.cos(theta), rho * math.sin(theta))
    spec = BeadSpec(pairs=pairs, K=config.K, h_a=config.h_a,
                    alpha=config.alpha)

    # right-helix chirality: sign of each consecutive second-bead quadruple
    entries = []
    n_pairs = len(pairs)
    local_b2 = [n + 2 * l + 1 for l in range(n_pairs)]
    # beads as stored by equip: b1, b2 interleaved per pair, after the atoms
    stored = np.vstack([conf, bead_conf])
    for l in range(n_pairs - 3):
        tup = tuple(local_b2[l + t] for t in range(4))
        sign = chi_of_points(stored, tup, rank=4)
        if sign != 0:
            entries.append((tup, sign))

    system = equip(g, conf, spec, bead_conf=bead_conf,
                   chirotope_entries=entries)
    return system


@dataclass
class DemoResult:
    seed: int
    axial_drift: float
    twist_angle: float
    acceptance_rate: float


def _axis_com(system):
    atoms = system.atom_vertices()
    return float(system.conf[atoms, 0].mean())


def _twist_phase(system):
    """Azimuthal angles of the beads about the chain axis.

    The atoms sit on the axis and carry no azimuth; the beads hold the
    transverse helix structure, and nothing in the energy pins their
    global azimuth, so accumulated phase increments measure the rotation
    the directed driving induces."""
    K, n, nl = system.spec.K, system.n_atoms, system.n_local
    phases = []
    for k in range(K):
        for b in range(n, nl):
            p = system.conf[system.vid(k, b)]
            phases.append(math.atan2(p[2], p[1]))
    return phases


def polymer_demo(config, seed, rng_factory=None):
    """One directed (or control) polymer run; reports the axial
    center-of-mass drift and, with fix_last, the unwrapped twist angle."""
    from .rng import MersenneTwister
    rng = (rng_factory or MersenneTwister)(seed)
    system = build_polymer(config)
    S = np.full(system.graph.n, config.S_bead)
    for k in range(config.K):
        for i in range(system.n_atoms):
            S[system.vid(k, i)] = config.S_atom
    atom_set = frozenset(system.atom_vertices())
    model = PotentialModel(kT=config.kT, lj_eps=config.lj_eps,
                           lj_sigma=config.lj_sigma, lj_cutoff=config.lj_cutoff,
                           lj_participants=atom_set)
    params = VibrantParams()
    M = config.M if config.M is not None else 2 * system.graph.n

    if config.fix_last:
        n = system.n_atoms
        pinned = [system.vid(k, n - 1) for k in range(config.K)]
        S_run = S.copy()
        for v in pinned:
            S_run[v] = 0.0
    else:
        pinned = []
        S_run = S

    start_com = _axis_com(system)
    twist = 0.0
    prev_phases = _twist_phase(system)
    accepted = 0
    steps = 0
    for _ in range(config.jumps):
        _, report = noneq_step(system, S_run, model, params, rng, M, pinned)
        accepted += report.accepted
        steps += report.steps
        if config.fix_last:
            phases = _twist_phase(system)
            for a, b in zip(prev_phases, phases):
                d = b - a
                while d > math.pi:
                    d -= 2 * math.pi
                while d < -math.pi:
                    d += 2 * math.pi
                twist += d / len(phases)
            prev_phases = phases
    drift = _axis_com(system) - start_com
    return DemoResult(seed=seed, axial_drift=drift, twist_angle=twist,
                      acceptance_rate=accepted / steps if steps else 0.0), system

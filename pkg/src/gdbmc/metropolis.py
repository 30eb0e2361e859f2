"""Metropolis Monte Carlo in the restricted sample space.

A trial move displaces one vertex inside a ball of radius S[u]; the move
is subjected to the local region checks (own center distance, neighbors'
center distances, chirality) before the Metropolis acceptance at
temperature kT.  When the current position itself violates the region the
move falls back to a vibrant centering step, so the same loop drives a
conformation into D(S) and then samples inside it.

The potential is a configurable toy force field: the graph's Hooke terms
plus an optional cut-and-shifted Lennard-Jones between non-adjacent
participant pairs.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .chirotope import check_chirality
from .distgeo import check_distance
from .graph import center, hooke_potential, in_restricted_space


@dataclass
class PotentialModel:
    kT: float = 1.0
    lj_eps: float = 0.0          # 0 disables the Lennard-Jones part
    lj_sigma: float = 1.0
    lj_cutoff: float = 2.5
    lj_participants: frozenset = None   # None = every vertex

    def __post_init__(self):
        if self.kT <= 0:
            raise ValueError("kT must be positive")
        if self.lj_eps < 0:
            raise ValueError("lj_eps must be nonnegative")
        if self.lj_eps > 0 and self.lj_cutoff < self.lj_sigma:
            raise ValueError("cutoff must be >= sigma")
        if self.lj_participants is not None:
            self.lj_participants = frozenset(self.lj_participants)


def lj_pair_energy(model, r):
    """Cut-and-shifted Lennard-Jones: 4 eps ((s/r)^12 - (s/r)^6) minus its
    value at the cutoff, zero beyond the cutoff."""
    if r >= model.lj_cutoff:
        return 0.0
    s6 = (model.lj_sigma / r) ** 6
    c6 = (model.lj_sigma / model.lj_cutoff) ** 6
    return 4.0 * model.lj_eps * (s6 * s6 - s6) - 4.0 * model.lj_eps * (c6 * c6 - c6)


def _lj_partners(model, graph, u):
    if model.lj_eps == 0.0:
        return ()
    parts = model.lj_participants
    if parts is not None and u not in parts:
        return ()
    neighbors = {v for (v, _, _) in graph.adj[u]}
    for v in range(graph.n):
        if v == u or v in neighbors:
            continue
        if parts is not None and v not in parts:
            continue
        yield v


def local_potential(model, graph, conf, u):
    """All potential terms involving vertex u: incident Hooke edges plus
    Lennard-Jones with non-adjacent participants inside the cutoff.  The
    total-energy difference of a single-vertex move equals the local
    difference."""
    a_u = conf[u]
    total = 0.0
    for (v, W, h) in graph.adj[u]:
        r = float(np.linalg.norm(a_u - conf[v]))
        total += 0.5 * h * (r - W) ** 2
    for v in _lj_partners(model, graph, u):
        r = float(np.linalg.norm(a_u - conf[v]))
        if r > 0.0:
            total += lj_pair_energy(model, r)
    return total


def full_potential(model, graph, conf):
    """Hooke potential plus every Lennard-Jones pair term."""
    total = hooke_potential(graph, conf)
    if model.lj_eps > 0.0:
        parts = (range(graph.n) if model.lj_participants is None
                 else sorted(model.lj_participants))
        parts = list(parts)
        adj = [{v for (v, _, _) in graph.adj[u]} for u in range(graph.n)]
        for i, u in enumerate(parts):
            for v in parts[i + 1:]:
                if v in adj[u]:
                    continue
                r = float(np.linalg.norm(conf[u] - conf[v]))
                if r > 0.0:
                    total += lj_pair_energy(model, r)
    return total


def trial_move(graph, conf, u, S, model, params, chirotope, rng, frozen=None):
    """One trial move of vertex u; returns 'accepted', 'rejected' or
    'fallback'.

    The proposal a + S[u]*RandomVector() is kept only if it passes the
    local region checks and the Metropolis test at kT.  If instead the
    current position itself fails the region checks, a vibrant centering
    move (with chirality revert) is taken.
    """
    a = conf[u].copy()
    su = S[u]
    conf[u] = a + su * rng.unit_ball(graph.dim)
    ok = (np.linalg.norm(conf[u] - center(graph, conf, u)) < su
          and check_distance(graph, conf, u, S)
          and (chirotope is None or check_chirality(chirotope, conf, u)))
    if ok:
        E = local_potential(model, graph, conf, u)
        z = conf[u].copy()
        conf[u] = a
        e = local_potential(model, graph, conf, u)
        if E < e or rng.uniform() < math.exp((e - E) / model.kT):
            conf[u] = z
            return "accepted"
        return "rejected"
    conf[u] = a
    z = center(graph, conf, u)
    r = float(np.linalg.norm(a - z))
    if r > su or not check_distance(graph, conf, u, S):
        noise = params.c * rng.unit_ball(graph.dim)
        if r > params.C * su:
            conf[u] = a + params.C * su * ((z - a) / r + noise)
        elif r > su:
            conf[u] = a + su * ((z - a) / r + noise)
        else:
            conf[u] = z + su * noise
        if chirotope is not None and len(chirotope) and not check_chirality(chirotope, conf, u):
            conf[u] = a
        return "fallback"
    return "rejected"


@dataclass
class MCReport:
    steps: int = 0
    accepted: int = 0
    rejected: int = 0
    fallback_moves: int = 0
    energy_trace: list = field(default_factory=list)      # per sweep
    in_space_trace: list = field(default_factory=list)    # per sweep

    @property
    def acceptance_rate(self):
        return self.accepted / self.steps if self.steps else 0.0


def mc_run(graph, conf, S, model, params, chirotope, sweeps, rng,
           frozen=None, trace_every=1):
    """Random-vertex TrialMove repeated sweeps*|V| times.

    `frozen` is an optional set of vertices that are never selected (their
    coordinates stay bit-identical).  The energy and D(S)-membership
    traces are recorded every `trace_every` sweeps.
    """
    n = graph.n
    movable = [u for u in range(n) if frozen is None or u not in frozen]
    if not movable:
        raise ValueError("no movable vertices")
    report = MCReport()
    for sweep in range(sweeps):
        for _ in range(n):
            u = movable[int(rng.uniform() * len(movable))]
            tag = trial_move(graph, conf, u, S, model, params, chirotope, rng)
            report.steps += 1
            if tag == "accepted":
                report.accepted += 1
            elif tag == "rejected":
                report.rejected += 1
            else:
                report.fallback_moves += 1
        if (sweep + 1) % trace_every == 0:
            report.energy_trace.append(full_potential(model, graph, conf))
            report.in_space_trace.append(in_restricted_space(graph, conf, S))
    return conf, report

"""Iterative centering and its noisy variant.

Pure centering repeatedly moves a vertex to its spring-weighted center;
the Hooke potential is non-increasing and each step's decrease is at least
(sum of incident spring constants) times the squared displacement, so
displacements vanish.  Vibrant centering caps the move length, adds
ball-uniform noise, and reverts any move that breaks a chirality
constraint; it is used to escape jams that the pure iteration with
chirality checks runs into.
"""

from dataclasses import dataclass, field

import numpy as np

from .chirotope import check_chirality
from .graph import center, hooke_potential, in_restricted_space


@dataclass
class CenteringSchedule:
    order: str = "cyclic"            # "cyclic" | "random"
    max_steps: int = 100000
    stop_displacement: float = 1e-9

    def __post_init__(self):
        if self.order not in ("cyclic", "random"):
            raise ValueError("order must be 'cyclic' or 'random'")
        if self.max_steps < 1:
            raise ValueError("max_steps must be positive")


@dataclass
class VibrantParams:
    c: float = 1.1                   # ergodicity noise factor, > 1
    C: float = 10.0                  # move cap factor, > 1

    def __post_init__(self):
        if self.c <= 1.0 or self.C <= 1.0:
            raise ValueError("need c > 1 and C > 1")


@dataclass
class CenteringTrace:
    steps: int = 0
    vertices: list = field(default_factory=list)
    displacements: list = field(default_factory=list)
    potentials: list = field(default_factory=list)
    converged: bool = False


def _visit_order(schedule, n, rng):
    if schedule.order == "cyclic":
        k = 0
        while True:
            yield k % n
            k += 1
    else:
        if rng is None:
            raise ValueError("random visitation order needs an rng")
        while True:
            yield int(rng.uniform() * n)


def iterative_centering(graph, conf, schedule, rng=None, record_potential=True,
                        chirotope=None):
    """Pure centering sweep per the schedule.

    Stops at max_steps or when the displacement falls below the threshold
    on a full window of |V| consecutive steps (so every vertex is settled,
    not just the last visited one).  With a chirotope, moves that break a
    chirality constraint are reverted and recorded as zero displacement.
    Returns (conf, CenteringTrace); conf is modified in place.
    """
    trace = CenteringTrace()
    n = graph.n
    window = []
    for u in _visit_order(schedule, n, rng):
        if trace.steps >= schedule.max_steps:
            break
        c_u = center(graph, conf, u)
        disp = float(np.linalg.norm(conf[u] - c_u))
        old = conf[u].copy()
        conf[u] = c_u
        if (chirotope is not None and len(chirotope)
                and not check_chirality(chirotope, conf, u)):
            conf[u] = old
            disp = 0.0
        trace.steps += 1
        trace.vertices.append(u)
        trace.displacements.append(disp)
        if record_potential:
            trace.potentials.append(hooke_potential(graph, conf))
        window.append(disp)
        if len(window) > n:
            window.pop(0)
        if len(window) == n and max(window) < schedule.stop_displacement:
            trace.converged = True
            break
    return conf, trace


def vibrant_center(graph, conf, u, S, params, chirotope, rng):
    """One noisy centering move of vertex u.

    The move toward the center is capped at C*S[u] (far regime), S[u]
    (near regime), or jitters around the center itself (inside regime);
    each variant adds ball-uniform noise scaled by c.  A move that breaks
    a chirality constraint involving u is reverted.  Returns the applied
    displacement norm.
    """
    a = conf[u].copy()
    z = center(graph, conf, u)
    r = float(np.linalg.norm(a - z))
    su = S[u]
    cap = params.C * su
    noise = params.c * rng.unit_ball(graph.dim)
    if r > cap:
        conf[u] = a + cap * ((z - a) / r + noise)
    elif r > su:
        conf[u] = a + su * ((z - a) / r + noise)
    else:
        conf[u] = z + su * noise
    if chirotope is not None and len(chirotope) and not check_chirality(chirotope, conf, u):
        conf[u] = a
        return 0.0
    return float(np.linalg.norm(conf[u] - a))


def check_distance(graph, conf, u, S):
    """True iff every neighbor v of u sits within S[v] of its own center
    (neighbors with S[v] = 0 never block)."""
    for (v, _, _) in graph.adj[u]:
        sv = S[v]
        if sv == 0.0:
            continue
        if np.linalg.norm(conf[v] - center(graph, conf, v)) >= sv:
            return False
    return True


@dataclass
class VibrantReport:
    steps: int
    in_space: bool
    stalled: bool = False
    potential: float = None


def vibrant_iteration(graph, conf, S, params, chirotope, rng, max_steps,
                      check_every=None):
    """Random-vertex vibrant centering until the conformation enters the
    restricted space or the step budget runs out."""
    n = graph.n
    if check_every is None:
        check_every = max(n, 16)
    steps = 0
    while steps < max_steps:
        burst = min(check_every, max_steps - steps)
        for _ in range(burst):
            u = int(rng.uniform() * n)
            vibrant_center(graph, conf, u, S, params, chirotope, rng)
        steps += burst
        if in_restricted_space(graph, conf, S):
            return conf, VibrantReport(steps=steps, in_space=True,
                                       potential=hooke_potential(graph, conf))
    return conf, VibrantReport(steps=steps, in_space=False,
                               potential=hooke_potential(graph, conf))


def centering_with_chirality(graph, conf, S, chirotope, rng, max_steps,
                             stall_window_factor=10, stall_improvement=1e-12):
    """Pure centering with chirality reverts, plus stall detection.

    A stall is declared when the potential improves by less than
    `stall_improvement` over stall_window_factor * |V| steps while
    membership in the restricted space still fails (reporting only).
    """
    n = graph.n
    window = stall_window_factor * n
    steps = 0
    last_potential = hooke_potential(graph, conf)
    since_check = 0
    while steps < max_steps:
        u = int(rng.uniform() * n)
        c_u = center(graph, conf, u)
        old = conf[u].copy()
        conf[u] = c_u
        if chirotope is not None and len(chirotope) and not check_chirality(chirotope, conf, u):
            conf[u] = old
        steps += 1
        since_check += 1
        if since_check >= window:
            since_check = 0
            pot = hooke_potential(graph, conf)
            if in_restricted_space(graph, conf, S):
                return conf, VibrantReport(steps=steps, in_space=True,
                                           potential=pot)
            if last_potential - pot < stall_improvement:
                return conf, VibrantReport(steps=steps, in_space=False,
                                           stalled=True, potential=pot)
            last_potential = pot
    pot = hooke_potential(graph, conf)
    return conf, VibrantReport(steps=steps,
                               in_space=in_restricted_space(graph, conf, S),
                               potential=pot)


def anneal_and_settle(graph, conf, S_target, params, chirotope, rng,
                      stages=(100.0, 10.0, 1.0), steps_per_stage=None):
    """Vibrant sweeps at a decreasing ladder of radius multipliers.

    Stages must decrease to 1; large early radii break frozen parts of the
    start conformation.  Returns (conf, in_space_flag) where the flag
    reports membership at the target radii; failure is reported, not
    raised.
    """
    stages = list(stages)
    if any(b >= a for a, b in zip(stages, stages[1:])) or stages[-1] != 1.0:
        raise ValueError("stages must strictly decrease and end at 1")
    S_target = np.asarray(S_target, dtype=float)
    if steps_per_stage is None:
        steps_per_stage = 2000 * graph.n
    for mult in stages:
        conf, report = vibrant_iteration(graph, conf, mult * S_target, params,
                                         chirotope, rng, steps_per_stage)
    return conf, in_restricted_space(graph, conf, S_target)

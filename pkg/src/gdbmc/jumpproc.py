"""Directed jump processes over ring-polymer copy pairs.

Two particles are represented by K copies each (quantum-classical
isomorphism, natural units).  Each jump compares the copy-pair distances at
two indices n1, n2 and takes the "forward" branch with probability alpha,
else the "backward" branch; the branch decides which copy of each particle
is pinned (bridge-resampling kind "N") or which two coordinates are
heat-bath resampled (kind "W").  At alpha = 1/2 the dynamics is undirected;
alpha > 1/2 produces a systematic drift of both particles.

Statistics follow the experiment harness conventions: J jumps total, F/R
count forward/backward jumps whose distance-comparison sign flips, A/B are
the final copy-averaged coordinates (B relative to the initial offset), and
C_n counts per-copy sign flips against the partner index n + j (mod K).
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .bridge import bridge_coefficients, levy_bridge
from .rng import seed_rng


@dataclass
class ProcessConfig:
    kind: str              # "N" (bridge resampling) or "W" (heat-bath pair)
    K: int
    alpha: float
    j: int = 0             # offset, used when pair_mode is False
    pair_mode: bool = False
    delta: float = None    # initial separation; default 100 * K
    d: int = 1

    def __post_init__(self):
        if self.kind not in ("N", "W"):
            raise ValueError("kind must be 'N' or 'W'")
        if self.K < 2:
            raise ValueError("K must be >= 2")
        if not 0.5 <= self.alpha <= 1.0:
            raise ValueError("alpha must lie in [1/2, 1]")
        if self.pair_mode:
            if self.kind == "W":
                raise ValueError("kind 'W' requires a fixed offset j")
        else:
            if not 0 < self.j < self.K:
                raise ValueError("j must satisfy 0 < j < K")
        if self.delta is None:
            self.delta = 100.0 * self.K
        if self.delta <= 0:
            raise ValueError("delta must be positive")
        if self.d < 1:
            raise ValueError("d must be >= 1")


@dataclass
class ProcessState:
    a: np.ndarray          # (K, d) copies of particle 1
    b: np.ndarray          # (K, d) copies of particle 2
    i: int = 0             # jump counter
    F: int = 0
    R: int = 0
    Cn: np.ndarray = None  # per-copy sign-flip counts


@dataclass
class JumpRecord:
    forward: bool
    flipped: bool          # distance-comparison sign changed across the jump


@dataclass
class JumpStats:
    J: int
    F: int
    R: int
    A: float
    B: float
    C: float
    Cn: np.ndarray = field(repr=False, default=None)


def offset_vector(config):
    """Initial separation vector: delta along the first coordinate axis."""
    v = np.zeros(config.d)
    v[0] = config.delta
    return v


def init_state(config):
    """State at jump 0: particle 1 copies at the origin, particle 2 copies
    at the offset vector, all counters zeroed."""
    K, d = config.K, config.d
    a = np.zeros((K, d))
    b = np.tile(offset_vector(config), (K, 1))
    return ProcessState(a=a, b=b, Cn=np.zeros(K, dtype=np.int64))


def choose_positions(rng, config):
    """Index pair for the next jump.

    Pair mode: uniform over unordered pairs, returned with n1 < n2.
    Offset mode: n1 uniform on 0..K-1, n2 = (n1 + j) mod K.
    """
    K = config.K
    if config.pair_mode:
        while True:
            n1 = int(rng.uniform() * K)
            n2 = int(rng.uniform() * K)
            if n1 != n2:
                break
        return (n1, n2) if n1 < n2 else (n2, n1)
    n1 = int(rng.uniform() * K)
    return n1, (n1 + config.j) % K


def _pair_dist(state, n):
    return float(np.linalg.norm(state.a[n] - state.b[n]))


def _less(x, y):
    # Exact ties are routed to the '<' branch (documented determinism
    # choice; ties have probability zero under continuous noise).
    return not x > y


def _record_flips(state, dists_before, dists_after, config):
    if config.pair_mode:
        return
    K, j = config.K, config.j
    for n in range(K):
        m = (n + j) % K
        if _less(dists_before[n], dists_before[m]) != _less(dists_after[n], dists_after[m]):
            state.Cn[n] += 1


def step_N(state, rng, config):
    """One jump of the bridge-resampling process.

    Two fresh pinned bridges replace all copies of both particles; the
    branch decides which particle is pinned at n1 and which at n2.
    """
    K, d = config.K, config.d
    a_hat = levy_bridge(K, d, rng)
    b_hat = levy_bridge(K, d, rng)
    n1, n2 = choose_positions(rng, config)
    forward = rng.uniform() < config.alpha
    dists_before = [_pair_dist(state, n) for n in range(K)]
    less = _less(dists_before[n1], dists_before[n2])
    if less == forward:
        pin_a, pin_b = n1, n2
    else:
        pin_a, pin_b = n2, n1
    state.a = a_hat + (state.a[pin_a] - a_hat[pin_a])
    state.b = b_hat + (state.b[pin_b] - b_hat[pin_b])
    dists_after = [_pair_dist(state, n) for n in range(K)]
    flipped = less != _less(dists_after[n1], dists_after[n2])
    if flipped:
        if forward:
            state.F += 1
        else:
            state.R += 1
    _record_flips(state, dists_before, dists_after, config)
    state.i += 1
    return JumpRecord(forward=forward, flipped=flipped)


def step_W(state, rng, config):
    """One jump of the heat-bath pair process: exactly one coordinate of
    each particle is resampled from the ring-neighbor midpoint plus
    1/sqrt(2K) noise (natural units)."""
    if config.pair_mode:
        raise ValueError("kind 'W' is defined for offset mode only")
    K, d = config.K, config.d
    n1, n2 = choose_positions(rng, config)
    forward = rng.uniform() < config.alpha
    dists_before = [_pair_dist(state, n) for n in range(K)]
    less = _less(dists_before[n1], dists_before[n2])
    if less == forward:
        m_a, m_b = n2, n1
    else:
        m_a, m_b = n1, n2
    sigma = 1.0 / math.sqrt(2.0 * K)
    eta_a = rng.normals(d)
    eta_b = rng.normals(d)
    state.a[m_a] = (state.a[m_a - 1] + state.a[(m_a + 1) % K]) / 2.0 + sigma * eta_a
    state.b[m_b] = (state.b[m_b - 1] + state.b[(m_b + 1) % K]) / 2.0 + sigma * eta_b
    dists_after = [_pair_dist(state, n) for n in range(K)]
    flipped = less != _less(dists_after[n1], dists_after[n2])
    if flipped:
        if forward:
            state.F += 1
        else:
            state.R += 1
    _record_flips(state, dists_before, dists_after, config)
    state.i += 1
    return JumpRecord(forward=forward, flipped=flipped)


def stats_from_state(state, config):
    """Final JumpStats: A and B are copy averages of the first coordinate
    (relative to the initial offset for particle 2)."""
    A = float(np.mean(state.a[:, 0]))
    B = float(np.mean(state.b[:, 0])) - config.delta
    C = float(np.mean(state.Cn))
    return JumpStats(J=state.i, F=state.F, R=state.R, A=A, B=B, C=C,
                     Cn=state.Cn.copy())


def run(config, n_jumps, seed):
    """Execute n_jumps jumps from the initial state and return JumpStats."""
    if n_jumps < 1:
        raise ValueError("n_jumps must be positive")
    rng = seed_rng(seed)
    if config.d == 1:
        return _run_scalar(config, n_jumps, rng)
    state = init_state(config)
    step = step_N if config.kind == "N" else step_W
    for _ in range(n_jumps):
        step(state, rng, config)
    return stats_from_state(state, config)


def _run_scalar(config, n_jumps, rng):
    # Tight d = 1 loop on Python floats; produces the same trajectories as
    # the generic step functions (cross-checked in tests).
    K = config.K
    j = config.j
    alpha = config.alpha
    delta = config.delta
    pair_mode = config.pair_mode
    kind_n = config.kind == "N"
    uniform = rng.uniform
    normal = rng.normal

    a = [0.0] * K
    b = [delta] * K
    dist = [delta] * K
    F = 0
    R = 0
    Cn = [0] * K
    coef, sig = bridge_coefficients(K)
    coef = coef.tolist()
    sig = sig.tolist()
    sigma_w = 1.0 / math.sqrt(2.0 * K)
    rng_k = range(K)
    rng_k1 = range(1, K)

    for _ in range(n_jumps):
        if kind_n:
            a_hat = [0.0] * K
            prev = 0.0
            for n in rng_k1:
                prev = coef[n - 1] * prev + sig[n - 1] * normal()
                a_hat[n] = prev
            b_hat = [0.0] * K
            prev = 0.0
            for n in rng_k1:
                prev = coef[n - 1] * prev + sig[n - 1] * normal()
                b_hat[n] = prev
        if pair_mode:
            while True:
                n1 = int(uniform() * K)
                n2 = int(uniform() * K)
                if n1 != n2:
                    break
            if n1 > n2:
                n1, n2 = n2, n1
        else:
            n1 = int(uniform() * K)
            n2 = (n1 + j) % K
        forward = uniform() < alpha
        less = not dist[n1] > dist[n2]
        if kind_n:
            if less == forward:
                pin_a, pin_b = n1, n2
            else:
                pin_a, pin_b = n2, n1
            sa = a[pin_a] - a_hat[pin_a]
            sb = b[pin_b] - b_hat[pin_b]
            new_dist = [0.0] * K
            for n in rng_k:
                an = a_hat[n] + sa
                bn = b_hat[n] + sb
                a[n] = an
                b[n] = bn
                new_dist[n] = abs(an - bn)
        else:
            if less == forward:
                m_a, m_b = n2, n1
            else:
                m_a, m_b = n1, n2
            a[m_a] = (a[m_a - 1] + a[(m_a + 1) % K]) / 2.0 + sigma_w * normal()
            b[m_b] = (b[m_b - 1] + b[(m_b + 1) % K]) / 2.0 + sigma_w * normal()
            new_dist = dist[:]
            new_dist[m_a] = abs(a[m_a] - b[m_a])
            new_dist[m_b] = abs(a[m_b] - b[m_b])
        if less != (not new_dist[n1] > new_dist[n2]):
            if forward:
                F += 1
            else:
                R += 1
        if not pair_mode:
            if kind_n:
                for n in rng_k:
                    m = (n + j) % K
                    if (not dist[n] > dist[m]) != (not new_dist[n] > new_dist[m]):
                        Cn[n] += 1
            else:
                touched = {m_a, (m_a - j) % K, m_b, (m_b - j) % K}
                for n in touched:
                    m = (n + j) % K
                    if (not dist[n] > dist[m]) != (not new_dist[n] > new_dist[m]):
                        Cn[n] += 1
        dist = new_dist

    A = sum(a) / K
    B = sum(b) / K - delta
    Cn = np.asarray(Cn, dtype=np.int64)
    return JumpStats(J=n_jumps, F=F, R=R, A=A, B=B, C=float(np.mean(Cn)),
                     Cn=Cn)


def derived_ratios(stats, config):
    """Summary ratios r1 = (A+B) K sqrt(K) / (F-R) and
    r2 = (A+B) J / ((F-R) C).

    For kind "N" the per-copy flip average C is taken as J/2 by definition.
    Raises ValueError when F = R (ratios undefined).
    """
    if stats.F == stats.R:
        raise ValueError("F equals R; ratios are undefined")
    K = config.K
    ab = stats.A + stats.B
    r1 = ab * K * math.sqrt(K) / (stats.F - stats.R)
    C = stats.J / 2.0 if config.kind == "N" else stats.C
    if C == 0:
        raise ValueError("C is zero; r2 is undefined")
    r2 = ab * stats.J / ((stats.F - stats.R) * C)
    return {"r1": r1, "r2": r2}

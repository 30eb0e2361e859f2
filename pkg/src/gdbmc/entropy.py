"""Relative entropy, slit intensity distributions, and entropy-rate
diagnostics for finite-state chains.

Conventions: KL divergences are returned in bits (log base 2); the
entropy production and flow rates are in nats per unit time.  Conversions
are always explicit at call sites.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad


# ---------------------------------------------------------------------------
# Slit intensities

@dataclass
class SlitModel:
    N: int           # slit count
    q: float = 1.0   # separation / width ratio, >= 1

    def __post_init__(self):
        if self.N < 1:
            raise ValueError("N must be >= 1")
        if self.q < 1.0:
            raise ValueError("q must be >= 1")


def _sinc(x):
    # sin(x)/x with the x = 0 limit.
    return 1.0 if x == 0.0 else math.sin(x) / x


def _ratio2(qx):
    # sin(2qx)/sin(qx) with the removable singularity at sin(qx) = 0,
    # where the ratio tends to 2 cos(qx).
    s = math.sin(qx)
    if abs(s) < 1e-9:
        return 2.0 * math.cos(qx)
    return math.sin(2.0 * qx) / s


def slit_intensity(model, x):
    """Normalized single/double-slit intensity at x (N = 1 or 2); for
    N > 2 the unnormalized general pattern is returned."""
    q = model.q
    if model.N == 1:
        return _sinc(x) ** 2 / math.pi
    if model.N == 2:
        return _sinc(x) ** 2 * _ratio2(q * x) ** 2 / (2.0 * math.pi)
    return intensity_pattern(model.N, q, x)


def intensity_pattern(N, q, Y):
    """General N-slit pattern sin^2(Y) sin^2(NqY) / (N^2 Y^2 sin^2(qY)),
    unnormalized, with removable singularities evaluated by limits."""
    s = math.sin(q * Y)
    if abs(s) < 1e-9:
        # sin(NqY)/sin(qY) -> N * cos-like limit; evaluate by l'Hopital
        # at the exact zeros of sin(qY).
        k = round(q * Y / math.pi)
        ratio = N * math.cos(N * k * math.pi) / math.cos(k * math.pi)
    else:
        ratio = math.sin(N * q * Y) / s
    return _sinc(Y) ** 2 * ratio ** 2 / (N * N)


def slit_log_singularities(q, a, b):
    """Zeros of the double-slit intensity (cos(qx) = 0) inside (a, b);
    there the KL integrand has an integrable log singularity."""
    out = []
    k = math.floor((a * q / math.pi) - 0.5)
    while True:
        x = (0.5 + k) * math.pi / q
        if x >= b:
            break
        if x > a:
            out.append(x)
        k += 1
    return out


# ---------------------------------------------------------------------------
# Continuous relative entropy

@dataclass
class KLResult:
    bits: float
    error: float         # accumulated quadrature error + tail estimate
    window: float        # half-width of the final integration window
    converged: bool


def _kl_integrand(p_density, q_density):
    def f(x):
        p = p_density(x)
        if p <= 0.0:
            return 0.0
        q = q_density(x)
        if q <= 0.0:
            # integrable log singularity; quad never lands exactly on it
            # once the interval is split there
            return math.inf
        return p * math.log2(p / q)
    return f


def _integrate_segmented(f, a, b, points, epsabs):
    pts = [a] + sorted(x for x in points if a < x < b) + [b]
    total = 0.0
    err = 0.0
    for lo, hi in zip(pts[:-1], pts[1:]):
        v, e = quad(f, lo, hi, limit=150, epsabs=epsabs, epsrel=1e-9)
        total += v
        err += e
    return total, err


def kl_continuous(p_density, q_density, singular_points=(), tol=1e-6,
                  initial_window=256.0, max_window=2.0 ** 20):
    """Relative entropy of two densities on the real line, in bits.

    `singular_points` lists locations where the integrand needs interval
    splitting (zeros of q where p > 0); it may also be a callable
    (a, b) -> points so that an expanding window can request more of them.
    The window [-X, X] doubles until the outermost shell contributes less
    than tol/10; the last shell is added once more as a tail estimate,
    which is exact for tails decaying like 1/X.
    """
    if callable(singular_points):
        points_in = singular_points
    else:
        fixed = sorted(singular_points)

        def points_in(a, b):
            return [x for x in fixed if a < x < b]

    f = _kl_integrand(p_density, q_density)
    epsabs = tol * 1e-4
    X = float(initial_window)
    total, err = _integrate_segmented(f, -X, X, points_in(-X, X), epsabs)
    converged = False
    shell = math.inf
    while X < max_window:
        right, e1 = _integrate_segmented(f, X, 2 * X, points_in(X, 2 * X), epsabs)
        left, e2 = _integrate_segmented(f, -2 * X, -X, points_in(-2 * X, -X), epsabs)
        shell = right + left
        total += shell
        err += e1 + e2
        X *= 2
        if abs(shell) < tol / 10.0:
            converged = True
            break
    # tail estimate: for ~c/x^2-type densities the remaining mass matches
    # the last computed shell
    total += shell if converged else 0.0
    err += abs(shell)
    return KLResult(bits=total, error=err, window=X, converged=converged)


def slit_kl(q, tol=1e-3):
    """Relative entropy (bits) of the single-slit intensity against the
    double-slit intensity with ratio q."""
    m1 = SlitModel(N=1, q=q)
    m2 = SlitModel(N=2, q=q)
    return kl_continuous(lambda x: slit_intensity(m1, x),
                         lambda x: slit_intensity(m2, x),
                         singular_points=lambda a, b: slit_log_singularities(q, a, b),
                         tol=tol)


# ---------------------------------------------------------------------------
# Discrete relative entropy

def kl_discrete(P, Q):
    """Sum of P log2(P/Q) with the 0 log 0 := 0 convention.

    Q need not be normalized (the entropy-flow identity compares a
    transition row against a transition column).  Raises on an
    absolute-continuity violation (Q = 0 where P > 0).
    """
    P = np.asarray(P, dtype=float)
    Q = np.asarray(Q, dtype=float)
    if P.shape != Q.shape:
        raise ValueError("P and Q must have the same length")
    if (P < 0).any() or (Q < 0).any():
        raise ValueError("probabilities must be nonnegative")
    mask = P > 0
    if (Q[mask] == 0).any():
        raise ValueError("Q vanishes where P is positive")
    return float(np.sum(P[mask] * np.log2(P[mask] / Q[mask])))


# ---------------------------------------------------------------------------
# Entropy production / flow rates of finite-state chains

@dataclass
class FiniteChain:
    p: np.ndarray    # row-stochastic transition matrix
    mu: np.ndarray   # probability vector

    def __post_init__(self):
        self.p = np.asarray(self.p, dtype=float)
        self.mu = np.asarray(self.mu, dtype=float)
        if self.p.ndim != 2 or self.p.shape[0] != self.p.shape[1]:
            raise ValueError("p must be a square matrix")
        if self.mu.shape != (self.p.shape[0],):
            raise ValueError("mu length must match p")
        if (self.p < 0).any() or (self.mu < 0).any():
            raise ValueError("entries must be nonnegative")
        if not np.allclose(self.p.sum(axis=1), 1.0, atol=1e-12):
            raise ValueError("rows of p must sum to 1")
        if not math.isclose(self.mu.sum(), 1.0, abs_tol=1e-12):
            raise ValueError("mu must sum to 1")


def entropy_rates(chain):
    """Entropy production rate and entropy flow rate, both in nats/time.

    Production: (1/2) sum over pairs of (mu(x)p(x,y) - mu(y)p(y,x))
    log(mu(x)p(x,y) / (mu(y)p(y,x))).  Flow: sum_x mu(x) I(x) with
    I(x) = sum_y p(x,y) log(p(x,y)/p(y,x)).  Requires reversibility
    (p(x,y) > 0 iff p(y,x) > 0) on the support.
    """
    p = chain.p
    mu = chain.mu
    n = p.shape[0]
    production = 0.0
    flow = 0.0
    for x in range(n):
        for y in range(n):
            if p[x, y] == 0.0 and p[y, x] == 0.0:
                continue
            if p[x, y] == 0.0 or p[y, x] == 0.0:
                raise ValueError(
                    f"irreversible pair ({x}, {y}): p(x,y) and p(y,x) must "
                    "both vanish or both be positive")
            flow += mu[x] * p[x, y] * math.log(p[x, y] / p[y, x])
            fx = mu[x] * p[x, y]
            fy = mu[y] * p[y, x]
            if fx > 0 and fy > 0:
                production += 0.5 * (fx - fy) * math.log(fx / fy)
            elif fx > 0 or fy > 0:
                production = math.inf
    return production, flow

"""Discrete Brownian bridge sampled by the recurrent Levy construction.

Natural units (m = k = T = hbar = 1, so beta = 1) are used throughout:
the step variance at index n out of K copies is (K-n) / (K * (K-n+1)).
The bridge is pinned at index 0; the implicit return to the start at step K
is a consequence of the recurrence and is not stored.
"""

import numpy as np


def bridge_coefficients(K):
    """Per-step recurrence coefficient and noise scale for indices 1..K-1.

    Returns (coef, sigma), each of length K-1, where
    coef[n-1] = (K-n)/(K-n+1) and sigma[n-1] = sqrt((K-n)/(K*(K-n+1))).
    """
    n = np.arange(1, K)
    coef = (K - n) / (K - n + 1.0)
    sigma = np.sqrt((K - n) / (K * (K - n + 1.0)))
    return coef, sigma


def levy_bridge(K, d, rng):
    """Sample one bridge of K points in R^d, pinned at zero at index 0."""
    if K < 1 or d < 1:
        raise ValueError("K and d must be positive")
    points = np.zeros((K, d))
    coef, sigma = bridge_coefficients(K)
    for n in range(1, K):
        eta = rng.normals(d)
        points[n] = coef[n - 1] * points[n - 1] + sigma[n - 1] * eta
    return points


def levy_bridges(count, K, d, rng):
    """Sample `count` bridges at once, shape (count, K, d).

    Consumes the normal stream in the same order as `count` successive
    levy_bridge calls and produces bit-identical points.
    """
    if K < 1 or d < 1:
        raise ValueError("K and d must be positive")
    eta = rng.normals(count * (K - 1) * d).reshape(count, K - 1, d)
    points = np.zeros((count, K, d))
    coef, sigma = bridge_coefficients(K)
    for n in range(1, K):
        points[:, n] = coef[n - 1] * points[:, n - 1] + sigma[n - 1] * eta[:, n - 1]
    return points


def shift_bridge(points, offset):
    """Translate every point of a bridge by `offset`."""
    points = np.asarray(points)
    offset = np.asarray(offset, dtype=float)
    if offset.shape != (points.shape[1],):
        raise ValueError("offset dimension does not match bridge dimension")
    return points + offset


def bridge_variance(K, n):
    """Closed-form Var(a_n) = n (K - n) / K**2 of the pinned bridge."""
    return n * (K - n) / float(K * K)


def bridge_covariance(K, m, n):
    """Closed-form Cov(a_m, a_n) = m (K - n) / K**2 for m <= n."""
    if m > n:
        m, n = n, m
    return m * (K - n) / float(K * K)

"""Deterministic pseudo-random source: MT19937 uniforms, Box-Muller normals,
and uniform vectors in the unit ball.

The raw generator is a self-contained Mersenne Twister (MT19937) whose output
stream is bit-identical to the reference sequence for a given 32-bit seed.
Uniforms are obtained by the mapping x / 2**32, so they lie in [0, 1) and the
stream can be replayed exactly across platforms.
"""

import math

import numpy as np

_N = 624
_M = 397
_MATRIX_A = 0x9908B0DF
_UPPER_MASK = 0x80000000
_LOWER_MASK = 0x7FFFFFFF

_TWO32 = 2.0 ** -32
# Smallest positive value of the x / 2**32 mapping; used to guard log(0)
# in the Box-Muller transform.
_MIN_UNIFORM = 2.0 ** -32


class MersenneTwister:
    """MT19937 generator with scalar and block output.

    The 32-bit state is refilled a block (624 words) at a time with
    vectorized numpy arithmetic; scalar draws pop from the tempered buffer,
    so scalar and block consumers see the same stream.
    """

    def __init__(self, seed):
        seed = int(seed) & 0xFFFFFFFF
        mt = np.empty(_N, dtype=np.uint64)
        mt[0] = seed
        for i in range(1, _N):
            mt[i] = (1812433253 * (mt[i - 1] ^ (mt[i - 1] >> 30)) + i) & 0xFFFFFFFF
        self._mt = mt.astype(np.uint32)
        self._buf = []
        self._pos = 0
        self._cached_normal = None

    def _refill(self):
        mt = self._mt.astype(np.uint64)
        out = np.empty(_N, dtype=np.uint64)
        # The in-place twist consumes already-updated words for i >= 227,
        # so the block is generated in sequential chunks.
        for lo, hi in ((0, _N - _M), (_N - _M, 2 * (_N - _M)), (2 * (_N - _M), _N - 1)):
            y = (mt[lo:hi] & _UPPER_MASK) | (mt[lo + 1:hi + 1] & _LOWER_MASK)
            src = out if lo >= _N - _M else mt
            out[lo:hi] = src[lo + _M - _N:hi + _M - _N] if lo >= _N - _M \
                else mt[lo + _M:hi + _M]
            out[lo:hi] ^= (y >> 1) ^ ((y & 1) * _MATRIX_A)
        y = (mt[_N - 1] & _UPPER_MASK) | (out[0] & _LOWER_MASK)
        out[_N - 1] = out[_M - 1] ^ (y >> 1) ^ ((y & 1) * _MATRIX_A)

        self._mt = out.astype(np.uint32)
        y = out
        y = y ^ (y >> 11)
        y = y ^ ((y << 7) & 0x9D2C5680)
        y = y ^ ((y << 15) & 0xEFC60000)
        y = (y ^ (y >> 18)) & 0xFFFFFFFF
        self._buf = y.tolist()
        self._pos = 0

    def raw32(self):
        """Next raw 32-bit output of the reference MT19937 sequence."""
        if self._pos >= len(self._buf):
            self._refill()
        v = self._buf[self._pos]
        self._pos += 1
        return v

    def uniform(self):
        """Uniform draw in [0, 1) via the x / 2**32 mapping."""
        if self._pos >= len(self._buf):
            self._refill()
        v = self._buf[self._pos]
        self._pos += 1
        return v * _TWO32

    def uniforms(self, n):
        """Array of n uniforms, consuming the same stream as uniform()."""
        out = np.empty(n, dtype=np.float64)
        filled = 0
        while filled < n:
            if self._pos >= len(self._buf):
                self._refill()
            take = min(n - filled, len(self._buf) - self._pos)
            out[filled:filled + take] = self._buf[self._pos:self._pos + take]
            self._pos += take
            filled += take
        out *= _TWO32
        return out

    def normal(self):
        """Standard normal variate via Box-Muller (cosine/sine pair, cached)."""
        z = self._cached_normal
        if z is not None:
            self._cached_normal = None
            return z
        u1 = self.uniform()
        if u1 <= 0.0:
            u1 = _MIN_UNIFORM
        u2 = self.uniform()
        r = math.sqrt(-2.0 * math.log(u1))
        t = 2.0 * math.pi * u2
        self._cached_normal = r * math.sin(t)
        return r * math.cos(t)

    def normals(self, n):
        """Array of n standard normals, bit-identical to n normal() calls."""
        out = np.empty(n, dtype=np.float64)
        k = 0
        if self._cached_normal is not None and n > 0:
            out[0] = self._cached_normal
            self._cached_normal = None
            k = 1
        m = n - k
        pairs = (m + 1) // 2
        if pairs:
            u = self.uniforms(2 * pairs)
            u1 = u[0::2].copy()
            np.copyto(u1, _MIN_UNIFORM, where=(u1 <= 0.0))
            u2 = u[1::2]
            r = np.sqrt(-2.0 * np.log(u1))
            t = 2.0 * np.pi * u2
            z1 = r * np.cos(t)
            z2 = r * np.sin(t)
            inter = np.empty(2 * pairs)
            inter[0::2] = z1
            inter[1::2] = z2
            out[k:] = inter[:m]
            if m % 2 == 1:
                self._cached_normal = float(inter[m])
        return out

    def unit_ball(self, dim):
        """Uniform vector in the closed unit ball of R^dim, by rejection
        from the enclosing cube."""
        if dim < 1:
            raise ValueError("dim must be >= 1")
        while True:
            v = [2.0 * self.uniform() - 1.0 for _ in range(dim)]
            if sum(x * x for x in v) <= 1.0:
                return np.asarray(v)


def seed_rng(seed):
    """Create a generator state from a 32-bit seed."""
    return MersenneTwister(seed)

"""Deterministic randomness: SplitMix64 and exact geometric sampling.

The generator is SplitMix64 ("splitmix64/edge-v1" for the per-edge keying
scheme below).  Everything is defined on plain Python integers first; the
numpy helpers replay the identical arithmetic on uint64 arrays and are
pinned to the scalar path by tests.

Geometric sampling is done by inversion of the CDF at 64-bit resolution
with exact integer thresholds: colour i has probability
(t_i - t_{i-1}) / 2^64 where t_i = floor((1 - (1-p)^i) * 2^64).  The error
against the ideal law (1-p)^{i-1} p is below 2^-64 per colour and the tail
beyond the last representable threshold is lumped into the final index.
"""

from __future__ import annotations

from bisect import bisect_right
from fractions import Fraction
from functools import lru_cache

import numpy as np

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15
MIX1 = 0xBF58476D1CE4E5B9
MIX2 = 0x94D049BB133111EB


def mix64(z: int) -> int:
    """SplitMix64 finalizer."""
    z &= MASK64
    z = ((z ^ (z >> 30)) * MIX1) & MASK64
    z = ((z ^ (z >> 27)) * MIX2) & MASK64
    return z ^ (z >> 31)


def edge_bits(seed: int, u: int, v: int) -> int:
    """64 uniform bits for the unordered pair {u, v} under ``seed``.

    Scheme "splitmix64/edge-v1": normalize u < v, then three chained
    finalizer rounds absorbing seed and both endpoints.  Pure function, so
    generation order and thread scheduling cannot change a graph.
    """
    a, b = (u, v) if u < v else (v, u)
    z = mix64((seed & MASK64) ^ GOLDEN)
    z = mix64(z ^ (((a + 1) * GOLDEN) & MASK64))
    z = mix64(z ^ (((b + 1) * MIX1) & MASK64))
    return z


@lru_cache(maxsize=None)
def geometric_thresholds(p: Fraction) -> tuple[int, ...]:
    """Ascending CDF thresholds for the geometric law with parameter p.

    colour(r) = bisect_right(thresholds, r) + 1 for r uniform in [0, 2^64).
    """
    if not isinstance(p, Fraction):
        raise TypeError("p must be a Fraction")
    if not (0 < p < 1):
        raise ValueError("p must lie strictly between 0 and 1")
    scale = 1 << 64
    q = 1 - p
    acc = q  # q^i
    out: list[int] = []
    while True:
        tail = -(-(acc.numerator * scale) // acc.denominator)  # ceil(q^i * 2^64)
        t = scale - tail
        if out and t <= out[-1]:
            break
        out.append(t)
        if tail <= 1:
            break
        acc *= q
    return tuple(out)


def geometric_colour(p: Fraction, r: int) -> int:
    """Colour index >= 1 for 64 uniform bits ``r``."""
    return bisect_right(geometric_thresholds(p), r) + 1


def edge_colour(p: Fraction, seed: int, u: int, v: int) -> int:
    return geometric_colour(p, edge_bits(seed, u, v))


# --- vectorized replay (uint64, wrapping arithmetic) ---

_G = np.uint64(GOLDEN)
_M1 = np.uint64(MIX1)
_M2 = np.uint64(MIX2)


def _mix64_vec(z: np.ndarray) -> np.ndarray:
    z = (z ^ (z >> np.uint64(30))) * _M1
    z = (z ^ (z >> np.uint64(27))) * _M2
    return z ^ (z >> np.uint64(31))


def all_edge_colours(p: Fraction, seed: int, n: int) -> np.ndarray:
    """Colours for every pair {i, j} of range(n), i < j.

    Flat layout: pair (i, j) at index j*(j-1)//2 + i.  Matches the scalar
    :func:`edge_colour` entry by entry.
    """
    total = n * (n - 1) // 2
    if total == 0:
        return np.zeros(0, dtype=np.int64)
    offsets = np.arange(n, dtype=np.int64)
    offsets = offsets * (offsets - 1) // 2
    idx = np.arange(total, dtype=np.int64)
    j = np.searchsorted(offsets, idx, side="right") - 1
    i = idx - offsets[j]
    a = i.astype(np.uint64)
    b = j.astype(np.uint64)
    with np.errstate(over="ignore"):
        z0 = np.uint64(mix64((seed & MASK64) ^ GOLDEN))
        z = _mix64_vec(z0 ^ ((a + np.uint64(1)) * _G))
        z = _mix64_vec(z ^ ((b + np.uint64(1)) * _M1))
    thresholds = np.array(geometric_thresholds(p), dtype=np.uint64)
    return (np.searchsorted(thresholds, z, side="right") + 1).astype(np.int64)


class SplitMix64Stream:
    """Sequential SplitMix64 stream for miscellaneous seeded choices."""

    def __init__(self, seed: int):
        self._state = seed & MASK64

    def next_u64(self) -> int:
        self._state = (self._state + GOLDEN) & MASK64
        return mix64(self._state)

    def randrange(self, k: int) -> int:
        """Uniform integer in [0, k) by rejection."""
        if k <= 0:
            raise ValueError("k must be positive")
        limit = (MASK64 + 1) - (MASK64 + 1) % k
        while True:
            r = self.next_u64()
            if r < limit:
                return r % k

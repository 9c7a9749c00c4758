"""Counter-based 64-bit random numbers.

Every output word is a pure function of ``(key, stream, counter)``::

    mix64(key, stream, counter) = fmix64(fmix64(key ^ fmix64(stream)) + G * (counter + 1))

where ``fmix64`` is the SplitMix64 finalizer, ``G = 0x9E3779B97F4A7C15`` and
all arithmetic wraps modulo 2**64.  With ``key = stream = 0`` the outputs are
exactly the SplitMix64 sequence seeded with 0.  Doubles take the top 53 bits;
normal variates use Box-Muller on consecutive pairs of doubles.
"""

from __future__ import annotations

import math

import numpy as np

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15
_M1 = 0xBF58476D1CE4E5B9
_M2 = 0x94D049BB133111EB


def fmix64_int(x: int) -> int:
    x &= MASK64
    x = ((x ^ (x >> 30)) * _M1) & MASK64
    x = ((x ^ (x >> 27)) * _M2) & MASK64
    return x ^ (x >> 31)


def mix64(key: int, stream: int, counter: int) -> int:
    """One output word for ``(key, stream, counter)``; plain-int reference form."""
    k = fmix64_int((key & MASK64) ^ fmix64_int(stream))
    return fmix64_int(k + GOLDEN * (counter + 1))


def _fmix64(x: np.ndarray) -> np.ndarray:
    x = x ^ (x >> np.uint64(30))
    x = x * np.uint64(_M1)
    x = x ^ (x >> np.uint64(27))
    x = x * np.uint64(_M2)
    return x ^ (x >> np.uint64(31))


def mix64_block(key: int, stream: int, start: int, count: int) -> np.ndarray:
    """``mix64(key, stream, c)`` for ``c`` in ``range(start, start + count)``."""
    k = fmix64_int((key & MASK64) ^ fmix64_int(stream))
    c = np.arange(count, dtype=np.uint64) + np.uint64((start + 1) & MASK64)
    return _fmix64(np.uint64(k) + np.uint64(GOLDEN) * c)


class CounterRng:
    """Stateless-per-draw generator: a key, a stream id and a running counter."""

    def __init__(self, key: int, stream: int = 0):
        self.key = int(key) & MASK64
        self.stream = int(stream) & MASK64
        self.counter = 0

    def words(self, count: int) -> np.ndarray:
        out = mix64_block(self.key, self.stream, self.counter, count)
        self.counter += count
        return out

    def uniform(self, count: int) -> np.ndarray:
        """Doubles in ``[0, 1)``."""
        return (self.words(count) >> np.uint64(11)).astype(np.float64) * 2.0**-53

    def uniform_range(self, low: float, high: float) -> float:
        return low + (high - low) * float(self.uniform(1)[0])

    def normal(self, count: int) -> np.ndarray:
        pairs = (count + 1) // 2
        u = self.uniform(2 * pairs)
        radius = np.sqrt(-2.0 * np.log1p(-u[0::2]))  # 1 - u is in (0, 1]
        angle = 2.0 * math.pi * u[1::2]
        z = np.empty(2 * pairs)
        z[0::2] = radius * np.cos(angle)
        z[1::2] = radius * np.sin(angle)
        return z[:count]

    def complex_normal(self, count: int) -> np.ndarray:
        """Standard complex Gaussians (real and imaginary parts each N(0, 1))."""
        z = self.normal(2 * count)
        return z[0::2] + 1j * z[1::2]

    def permutation(self, n: int) -> np.ndarray:
        return np.argsort(self.uniform(n), kind="stable")


def derive_seed(seed: int, stream: int, index: int) -> int:
    """Seed for trial ``index`` of ``stream``, independent of evaluation order."""
    return mix64(seed, stream, index)

"""Deterministic 64-bit counter-based random generator (SplitMix64).

The generator is fully specified here so corpora and parameter
initialisations reproduce bit-for-bit across machines and languages:

    state    : unsigned 64-bit integer
    step     : state += 0x9E3779B97F4A7C15                (mod 2**64)
    output   : z = state
               z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9   (mod 2**64)
               z = (z ^ (z >> 27)) * 0x94D049BB133111EB   (mod 2**64)
               z = z ^ (z >> 31)

Uniform doubles use the top 53 bits: (bits53 + 0.5) / 2**53, which lies
strictly inside (0, 1) so logarithms are always defined. Normal deviates
use the Box-Muller transform on consecutive uniforms (cosine branch
first, sine branch cached). Independent per-item streams are derived as
mix64(mix64(seed) + index).
"""

from __future__ import annotations

import math

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15
MIX_MUL_1 = 0xBF58476D1CE4E5B9
MIX_MUL_2 = 0x94D049BB133111EB


def mix64(z: int) -> int:
    """SplitMix64 output function applied to a single 64-bit value."""
    z &= MASK64
    z = ((z ^ (z >> 30)) * MIX_MUL_1) & MASK64
    z = ((z ^ (z >> 27)) * MIX_MUL_2) & MASK64
    return z ^ (z >> 31)


def derive_stream_seed(seed: int, index: int) -> int:
    """Seed for the index-th independent substream of a master seed."""
    if index < 0:
        raise ValueError("stream index must be non-negative")
    return mix64((mix64(seed) + index) & MASK64)


class CounterRng:
    """SplitMix64 stream with uniform, integer and normal draws."""

    def __init__(self, seed: int):
        self._state = seed & MASK64
        self._cached_normal: float | None = None

    def next_u64(self) -> int:
        self._state = (self._state + GOLDEN_GAMMA) & MASK64
        return mix64(self._state)

    def uniform(self, low: float = 0.0, high: float = 1.0) -> float:
        """Uniform double in (low, high); never exactly an endpoint."""
        u = ((self.next_u64() >> 11) + 0.5) * 2.0**-53
        return low + u * (high - low)

    def integer(self, n: int) -> int:
        """Uniform integer in [0, n) by rejection on the top bits."""
        if n <= 0:
            raise ValueError("n must be positive")
        # Rejection sampling keeps the distribution exactly uniform.
        limit = (MASK64 + 1) - ((MASK64 + 1) % n)
        while True:
            v = self.next_u64()
            if v < limit:
                return v % n

    def normal(self, mean: float = 0.0, std: float = 1.0) -> float:
        if self._cached_normal is not None:
            z = self._cached_normal
            self._cached_normal = None
        else:
            u1 = self.uniform()
            u2 = self.uniform()
            r = math.sqrt(-2.0 * math.log(u1))
            z = r * math.cos(2.0 * math.pi * u2)
            self._cached_normal = r * math.sin(2.0 * math.pi * u2)
        return mean + std * z

    def uniforms(self, count: int, low: float = 0.0, high: float = 1.0) -> list[float]:
        return [self.uniform(low, high) for _ in range(count)]

    def shuffle(self, items: list) -> None:
        """In-place Fisher-Yates shuffle."""
        for i in range(len(items) - 1, 0, -1):
            j = self.integer(i + 1)
            items[i], items[j] = items[j], items[i]

    def spawn(self, index: int) -> "CounterRng":
        """Independent substream; see derive_stream_seed."""
        return CounterRng(derive_stream_seed(self._state, index))

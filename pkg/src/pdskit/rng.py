"""Deterministic random streams built on splitmix64.

All sampling in the toolkit (splits, synthetic data, arithmetic datasets)
goes through this module so that identical seeds produce byte-identical
artifacts across runs, platforms, and implementations. Per-record streams
are seeded with ``seed XOR record_index``, which makes generation
parallelizable by record index.
"""

from __future__ import annotations

_MASK64 = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15


def mix64(x: int) -> int:
    """splitmix64 finalizer: one full avalanche step over a 64-bit state."""
    x = (x + _GAMMA) & _MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK64
    return x ^ (x >> 31)


class SplitMix64:
    """Sequential splitmix64 stream."""

    __slots__ = ("_state",)

    def __init__(self, seed: int):
        self._state = seed & _MASK64

    def next_u64(self) -> int:
        self._state = (self._state + _GAMMA) & _MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def below(self, n: int) -> int:
        """Uniform integer in [0, n) without modulo bias (rejection sampling)."""
        if n <= 0:
            raise ValueError("n must be positive")
        limit = (1 << 64) - ((1 << 64) % n)
        while True:
            u = self.next_u64()
            if u < limit:
                return u % n

    def randint(self, lo: int, hi: int) -> int:
        """Uniform integer in [lo, hi] inclusive."""
        return lo + self.below(hi - lo + 1)

    def choice(self, seq):
        return seq[self.below(len(seq))]


def record_stream(seed: int, index: int) -> SplitMix64:
    """Independent stream for record ``index`` under ``seed``."""
    return SplitMix64((seed ^ index) & _MASK64)


def record_key(seed: int, index: int) -> int:
    """First output of the record stream; used as a sort key for sampling."""
    return record_stream(seed, index).next_u64()

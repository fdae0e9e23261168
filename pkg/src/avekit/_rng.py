"""Seedable, portable pseudorandom generator for reproducible instances.

Implements xorshift64* (shifts 12/25/27, multiplier 0x2545F4914F6CDD1D)
with splitmix64 seed scrambling, in pure integer arithmetic, so identical
(seed, stream) pairs produce bitwise-identical instances on any platform
or library version.
"""

from __future__ import annotations

import numpy as np

_MASK = (1 << 64) - 1


def splitmix64(state: int) -> int:
    """One splitmix64 step; used to scramble user seeds."""
    state = (state + 0x9E3779B97F4A7C15) & _MASK
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    return z ^ (z >> 31)


class XorShift64Star:
    """xorshift64* generator with 53-bit uniform doubles in [0, 1)."""

    def __init__(self, seed: int, stream: int = 0):
        state = splitmix64(splitmix64(seed & _MASK) ^ splitmix64(stream & _MASK))
        self._state = state if state != 0 else 0x9E3779B97F4A7C15

    def next_u64(self) -> int:
        x = self._state
        x ^= x >> 12
        x = (x ^ (x << 25)) & _MASK
        x ^= x >> 27
        self._state = x
        return (x * 0x2545F4914F6CDD1D) & _MASK

    def random(self) -> float:
        return (self.next_u64() >> 11) * 2.0**-53

    def uniform(self, lo: float, hi: float) -> float:
        return lo + (hi - lo) * self.random()

    def uniform_array(self, shape, lo: float = -1.0, hi: float = 1.0) -> np.ndarray:
        size = int(np.prod(shape))
        vals = [self.uniform(lo, hi) for _ in range(size)]
        return np.array(vals).reshape(shape)

    def sign(self) -> int:
        return 1 if self.random() < 0.5 else -1

    def below(self, k: int) -> int:
        return int(self.random() * k)

    def permutation(self, n: int) -> list[int]:
        items = list(range(n))
        for i in range(n - 1, 0, -1):
            j = self.below(i + 1)
            items[i], items[j] = items[j], items[i]
        return items

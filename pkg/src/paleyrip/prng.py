"""Seeded, platform-independent PRNG for reproducible sampling.

SplitMix64 (Steele, Lea & Flood's mix function): state advances by the
64-bit golden-gamma constant and each output is a finalizer of the state.
Chosen because the whole algorithm fits in a dozen lines, so sampled
witnesses can be reproduced bit-for-bit from (seed, algorithm) alone,
independent of Python or NumPy version.
"""

from __future__ import annotations

_MASK = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15


def _mix(z: int) -> int:
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9 & _MASK
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB & _MASK
    return z ^ (z >> 31)


class SplitMix64:
    """64-bit SplitMix64 stream seeded with an arbitrary integer."""

    def __init__(self, seed: int):
        self._state = seed & _MASK

    def next_u64(self) -> int:
        self._state = (self._state + _GAMMA) & _MASK
        return _mix(self._state)

    def randbelow(self, n: int) -> int:
        """Uniform integer in [0, n) by 64-bit rejection sampling (unbiased)."""
        if n <= 0:
            raise ValueError("randbelow requires n >= 1")
        limit = (1 << 64) - ((1 << 64) % n)
        while True:
            r = self.next_u64()
            if r < limit:
                return r % n

    def open_unit(self) -> float:
        """Uniform double strictly inside (0, 1)."""
        return ((self.next_u64() >> 11) + 0.5) * 2.0**-53

    def sample_subset(self, n: int, k: int) -> tuple[int, ...]:
        """Uniform k-subset of {0, ..., n-1}, returned sorted.

        Partial Fisher-Yates on a sparse (dict-backed) array: O(k) time
        and memory regardless of n.
        """
        if not 0 <= k <= n:
            raise ValueError(f"cannot sample {k} elements from {n}")
        swap: dict[int, int] = {}
        out = []
        for i in range(k):
            j = i + self.randbelow(n - i)
            out.append(swap.get(j, j))
            swap[j] = swap.get(i, i)
        return tuple(sorted(out))

    def substream(self, index: int) -> "SplitMix64":
        """Independent child stream; deterministic in (seed, index)."""
        return SplitMix64(_mix((self._state ^ _GAMMA * index) & _MASK))

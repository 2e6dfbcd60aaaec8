"""Counter-based deterministic random stream (splitmix64).

Every randomized operation in the package draws from a CounterStream
keyed by an explicit seed (and optional subkeys), so identical inputs
reproduce identical outputs bit-for-bit on any platform.
"""

from __future__ import annotations

_MASK = (1 << 64) - 1


def _splitmix64(z: int) -> int:
    z = (z + 0x9E3779B97F4A7C15) & _MASK
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    return z ^ (z >> 31)


def mix(seed: int, *keys: int) -> int:
    """Fold subkeys into a seed; used to derive independent substreams."""
    state = _splitmix64(seed & _MASK)
    for k in keys:
        state = _splitmix64((state ^ (k & _MASK)) & _MASK)
    return state


class CounterStream:
    """Stateless-style generator: output i depends only on (seed, i)."""

    def __init__(self, seed: int, *keys: int):
        self._base = mix(seed, *keys)
        self._counter = 0

    def next_u64(self) -> int:
        v = _splitmix64((self._base + self._counter) & _MASK)
        self._counter += 1
        return v

    def below(self, bound: int) -> int:
        """Uniform-ish integer in [0, bound); deterministic, tiny modulo bias."""
        if bound <= 0:
            raise ValueError("bound must be positive")
        return self.next_u64() % bound

"""Portable deterministic random stream.

Seeded test data must be reproducible across platforms and Python builds, so
this module implements a fixed 64-bit shift-register generator (xorshift64*)
instead of delegating to library RNGs whose streams may change between
releases.  All state updates are plain integer arithmetic mod 2^64.
"""

from __future__ import annotations

_MASK64 = (1 << 64) - 1

# splitmix64 multipliers (Steele/Lea/Flood)
_SM_GAMMA = 0x9E3779B97F4A7C15
_SM_MUL1 = 0xBF58476D1CE4E5B9
_SM_MUL2 = 0x94D049BB133111EB

# xorshift64* output multiplier (Vigna)
_XS_MUL = 0x2545F4914F6CDD1D


def _splitmix64(x: int) -> int:
    z = (x + _SM_GAMMA) & _MASK64
    z = ((z ^ (z >> 30)) * _SM_MUL1) & _MASK64
    z = ((z ^ (z >> 27)) * _SM_MUL2) & _MASK64
    return z ^ (z >> 31)


class PortableRng:
    """xorshift64* stream; the seed is scrambled once with splitmix64.

    Shift triple (12, 25, 27) with output multiplier 2685821657736338717.
    The scramble step makes seed 0 usable (xorshift state must be nonzero).
    """

    def __init__(self, seed: int):
        self._state = _splitmix64(int(seed) & _MASK64) or _SM_GAMMA

    def next_u64(self) -> int:
        x = self._state
        x ^= x >> 12
        x ^= (x << 25) & _MASK64
        x ^= x >> 27
        self._state = x
        return (x * _XS_MUL) & _MASK64

    def uniform(self) -> float:
        """Uniform double in [0, 1), using the top 53 bits."""
        return (self.next_u64() >> 11) * 2.0**-53

    def uniform_signed(self) -> float:
        """Uniform double in [-1, 1)."""
        return 2.0 * self.uniform() - 1.0

    def complex_signed(self) -> complex:
        """Complex value with real and imaginary parts uniform in [-1, 1)."""
        re = self.uniform_signed()
        im = self.uniform_signed()
        return complex(re, im)

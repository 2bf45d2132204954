"""Deterministic randomness for reproducible set generation.

Generated sets must be recoverable bit for bit from (descriptor, seed) on
any platform, so we avoid the stdlib Mersenne generator and use SplitMix64:
a 64-bit counter advanced by a fixed odd increment, hashed through two
multiply-xorshift rounds.  The stream depends only on the seed.
"""

MASK64 = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15


class SplitMix64:
    __slots__ = ("state",)

    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next64(self) -> int:
        self.state = (self.state + _GAMMA) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def below(self, n: int) -> int:
        """Uniform integer in [0, n), unbiased via rejection."""
        if n <= 0:
            raise ValueError("below() requires n >= 1")
        # largest multiple of n that fits in 64 bits; values above it would bias
        limit = (1 << 64) - ((1 << 64) % n)
        while True:
            u = self.next64()
            if u < limit:
                return u % n

"""
Reproducible pseudo-random streams.

The generator is xorshift64* (shifts 12, 25, 27; multiplier
``0x2545F4914F6CDD1D``) seeded through one round of splitmix64. Sample ``k``
of a run seeded with ``s`` draws from ``stream(s, k)``, so reports do not
depend on how samples are scheduled.
"""

from typing import List, MutableSequence, Sequence, TypeVar

T = TypeVar("T")

MASK64 = (1 << 64) - 1
MULTIPLIER = 0x2545F4914F6CDD1D
GOLDEN_GAMMA = 0x9E3779B97F4A7C15


def splitmix64(value: int) -> int:
    z = (value + GOLDEN_GAMMA) & MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


class XorShift64Star:
    """xorshift64* over a 64-bit state that is never zero."""

    def __init__(self, seed: int) -> None:
        self.seed = seed & MASK64
        self.state = splitmix64(self.seed) or GOLDEN_GAMMA

    def next_u64(self) -> int:
        x = self.state
        x ^= x >> 12
        x ^= (x << 25) & MASK64
        x ^= x >> 27
        self.state = x
        return (x * MULTIPLIER) & MASK64

    def below(self, n: int) -> int:
        """Uniform integer in ``[0, n)`` by rejection sampling."""
        if n <= 0:
            raise ValueError("below() needs a positive bound")
        limit = (1 << 64) - (1 << 64) % n
        while True:
            x = self.next_u64()
            if x < limit:
                return x % n

    def randint(self, low: int, high: int) -> int:
        """Uniform integer in ``[low, high]``."""
        return low + self.below(high - low + 1)

    def choice(self, items: Sequence[T]) -> T:
        return items[self.below(len(items))]

    def shuffle(self, items: MutableSequence[T]) -> None:
        """Fisher-Yates, walking down from the last position."""
        for k in range(len(items) - 1, 0, -1):
            j = self.below(k + 1)
            items[k], items[j] = items[j], items[k]

    def permutation(self, n: int) -> List[int]:
        items = list(range(n))
        self.shuffle(items)
        return items

    def split(self, index: int) -> "XorShift64Star":
        """Independent child stream number ``index``."""
        return XorShift64Star(splitmix64(self.seed ^ ((index * GOLDEN_GAMMA) & MASK64)))


def stream(seed: int, index: int) -> XorShift64Star:
    """The stream used by sample ``index`` of a run seeded with ``seed``."""
    return XorShift64Star(seed).split(index)

"""Bijection between positive integers and dot patterns.

Codes enumerate, for grid sides l = 2, 3, ... and dot counts k = 1..l*l-1,
all k-combinations of the l*l pixels in lexicographic order of the pixel
index sets.  Pixel index i sits at coordinate (i mod l, i div l), x growing
rightward and y upward.  Everything is arbitrary-precision: the side-l
block already holds 2**(l*l) - 2 codes.
"""

from dataclasses import dataclass
from math import comb

from .errors import CodecError


@dataclass(frozen=True)
class SmnistPattern:
    side: int
    dots: frozenset  # of (x, y) pairs

    def __post_init__(self):
        object.__setattr__(self, "dots", frozenset(self.dots))

    def indices(self):
        """Pixel indices of the dots, ascending."""
        return sorted(x + y * self.side for x, y in self.dots)


def _check(pat):
    l = pat.side
    if l < 2:
        raise CodecError(f"grid side must be >= 2, got {l}")
    if not 1 <= len(pat.dots) <= l * l - 1:
        raise CodecError(
            f"a side-{l} pattern needs between 1 and {l * l - 1} dots, got {len(pat.dots)}"
        )
    for x, y in pat.dots:
        if not (0 <= x < l and 0 <= y < l):
            raise CodecError(f"dot ({x}, {y}) is outside the side-{l} grid")


def block_start(l, k):
    """Code of the first pattern with side l and k dots."""
    if l < 2:
        raise CodecError(f"grid side must be >= 2, got {l}")
    if not 1 <= k <= l * l - 1:
        raise CodecError(f"dot count must be in 1..{l * l - 1}, got {k}")
    start = 1
    for side in range(2, l):
        start += (1 << side * side) - 2
    for j in range(1, k):
        start += comb(l * l, j)
    return start


def pattern_of(p):
    """Pattern assigned to code p (total for every p >= 1)."""
    if p < 1:
        raise CodecError(f"codes are positive integers, got {p}")
    rest = p - 1
    l = 2
    while True:
        block = (1 << l * l) - 2
        if rest < block:
            break
        rest -= block
        l += 1
    n = l * l
    k = 1
    while rest >= comb(n, k):
        rest -= comb(n, k)
        k += 1
    indices = _unrank(n, k, rest)
    return SmnistPattern(l, frozenset((i % l, i // l) for i in indices))


def code_of_pattern(pat):
    """Inverse of pattern_of."""
    _check(pat)
    indices = pat.indices()
    return block_start(pat.side, len(indices)) + _rank(pat.side ** 2, indices)


def _unrank(n, k, rank):
    """rank-th (0-based) k-combination of {0..n-1} in lexicographic order."""
    chosen = []
    x = 0
    for remaining in range(k, 0, -1):
        while comb(n - x - 1, remaining - 1) <= rank:
            rank -= comb(n - x - 1, remaining - 1)
            x += 1
        chosen.append(x)
        x += 1
    return chosen


def _rank(n, indices):
    """Lexicographic rank of an ascending combination of {0..n-1}."""
    rank = 0
    k = len(indices)
    prev = -1
    for slot, chosen in enumerate(indices):
        for skipped in range(prev + 1, chosen):
            rank += comb(n - skipped - 1, k - slot - 1)
        prev = chosen
    return rank

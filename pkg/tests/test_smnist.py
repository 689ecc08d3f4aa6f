from itertools import combinations
from math import comb

import pytest

from para.errors import CodecError
from para.smnist import SmnistPattern, block_start, code_of_pattern, pattern_of


def brute_force_enumeration(max_side):
    """All patterns for sides 2..max_side in code order: k ascending, then
    pixel-index combinations in lexicographic order."""
    patterns = []
    for side in range(2, max_side + 1):
        pixels = range(side * side)
        for k in range(1, side * side):
            for chosen in combinations(pixels, k):
                patterns.append(SmnistPattern(side, frozenset((i % side, i // side) for i in chosen)))
    return patterns


# expected pattern for every code in the side-2 block plus the first side-3 code
FIRST_FIFTEEN = {
    1: (2, {(0, 0)}),
    2: (2, {(1, 0)}),
    3: (2, {(0, 1)}),
    4: (2, {(1, 1)}),
    5: (2, {(0, 0), (1, 0)}),
    6: (2, {(0, 0), (0, 1)}),
    7: (2, {(0, 0), (1, 1)}),
    8: (2, {(1, 0), (0, 1)}),
    9: (2, {(1, 0), (1, 1)}),
    10: (2, {(0, 1), (1, 1)}),
    11: (2, {(0, 0), (1, 0), (0, 1)}),
    12: (2, {(0, 0), (1, 0), (1, 1)}),
    13: (2, {(0, 0), (0, 1), (1, 1)}),
    14: (2, {(1, 0), (0, 1), (1, 1)}),
    15: (3, {(0, 0)}),
}


class TestPatternOf:
    def test_first_fifteen_codes(self):
        for p, (side, dots) in FIRST_FIFTEEN.items():
            assert pattern_of(p) == SmnistPattern(side, frozenset(dots))

    def test_visual_code_table(self):
        assert pattern_of(32) == SmnistPattern(3, frozenset({(1, 0), (2, 0)}))
        assert pattern_of(96) == SmnistPattern(3, frozenset({(1, 0), (0, 1), (0, 2)}))
        assert pattern_of(10) == SmnistPattern(2, frozenset({(0, 1), (1, 1)}))

    def test_side_three_block_boundary(self):
        # side-3 block is 2**9 - 2 = 510 codes wide, so it ends at 524
        last = pattern_of(524)
        assert last.side == 3
        assert last.dots == frozenset((x, y) for x in range(3) for y in range(3)) - {(0, 0)}
        assert pattern_of(525) == SmnistPattern(4, frozenset({(0, 0)}))

    def test_rejects_nonpositive(self):
        with pytest.raises(CodecError):
            pattern_of(0)

    def test_matches_brute_force_for_small_sides(self):
        oracle = brute_force_enumeration(3)
        assert len(oracle) == 524
        for p, expected in enumerate(oracle, start=1):
            assert pattern_of(p) == expected


class TestCodeOfPattern:
    def test_table_values(self):
        assert code_of_pattern(SmnistPattern(2, {(0, 1), (1, 1)})) == 10
        assert code_of_pattern(SmnistPattern(3, {(1, 0), (2, 0)})) == 32

    def test_full_grid_rejected(self):
        with pytest.raises(CodecError):
            code_of_pattern(SmnistPattern(2, {(0, 0), (1, 0), (0, 1), (1, 1)}))

    def test_empty_grid_rejected(self):
        with pytest.raises(CodecError):
            code_of_pattern(SmnistPattern(2, frozenset()))

    def test_out_of_range_dot_rejected(self):
        with pytest.raises(CodecError):
            code_of_pattern(SmnistPattern(2, {(2, 0)}))

    def test_side_one_rejected(self):
        with pytest.raises(CodecError):
            code_of_pattern(SmnistPattern(1, {(0, 0)}))

    def test_round_trip_to_one_hundred_thousand(self):
        # covers sides 2..4 completely and reaches into side 5
        for p in range(1, 10**5 + 1):
            assert code_of_pattern(pattern_of(p)) == p


class TestBlockStart:
    def test_side_two_blocks(self):
        assert block_start(2, 1) == 1
        assert block_start(2, 2) == 5
        assert block_start(2, 3) == 11

    def test_side_three_blocks(self):
        assert block_start(3, 1) == 15
        assert block_start(3, 3) == 15 + 9 + comb(9, 2)

    def test_block_size_identity(self):
        for side in range(2, 8):
            assert block_start(side + 1, 1) - block_start(side, 1) == (1 << side * side) - 2

    def test_k_out_of_range(self):
        with pytest.raises(CodecError):
            block_start(2, 4)
        with pytest.raises(CodecError):
            block_start(3, 0)

    def test_lexicographic_order_within_block(self):
        # index sets strictly increase lexicographically inside an (l, k) block
        for side, k in ((3, 2), (3, 4), (4, 3)):
            start = block_start(side, k)
            previous = None
            for p in range(start, start + comb(side * side, k)):
                current = pattern_of(p).indices()
                if previous is not None:
                    assert current > previous
                previous = current

    def test_large_codes_stay_exact(self):
        # side-6 codes exceed 64-bit range; ranking must stay exact
        p = block_start(7, 1) - 1  # last side-6 pattern
        assert p > 2**36
        assert code_of_pattern(pattern_of(p)) == p
        assert code_of_pattern(pattern_of(p + 1)) == p + 1

import pytest

from para.dictionary import SymbolDictionary
from para.errors import TilingError
from para.fol import Atom, Binary, Connective, Not, Quantified, Quantifier, Sort, Variable, expand_iff
from para.parser import parse_proto
from para.printer import print_proto
from para.tiler import SPACER, TilingGrid, grid_codes, grid_from_codes, tile, untile

from gen import formula_stream

MICE_CATS_GRID = [[2, 32, 2, 96], [0, 10, 32, 4, 14, 96], [0, 6, 18, 32, 96]]


def parse(text, d=None, **kwargs):
    d = SymbolDictionary() if d is None else d
    return d, parse_proto(text, d, **kwargs)


class TestTile:
    def test_mice_cats_grid(self, mice_cats):
        d, f = mice_cats
        assert grid_codes(tile(f, d)) == MICE_CATS_GRID

    def test_single_atom(self, mice_cats):
        d, _ = mice_cats
        f = parse_proto("Mouse(x)", d, allow_free=True)
        assert grid_codes(tile(f, d)) == [[10, 32]]

    def test_negated_atom(self, mice_cats):
        d, _ = mice_cats
        f = parse_proto("~Mouse(x)", d, allow_free=True)
        grid = tile(f, d)
        assert grid_codes(grid) == [[3, 10, 32]]
        assert untile(grid, d) == f

    def test_negated_flat_conjunction_stays_single_row(self, mice_cats):
        d, _ = mice_cats
        f = parse_proto("~(Mouse(x) & Cat(y))", d, allow_free=True)
        grid = tile(f, d)
        assert grid_codes(grid) == [[3, 10, 32, 4, 14, 96]]
        assert untile(grid, d) == f

    def test_negated_implication_indents_its_operand(self, mice_cats):
        d, _ = mice_cats
        f = parse_proto("~(Mouse(x) -> Cat(y))", d, allow_free=True)
        grid = tile(f, d)
        assert grid_codes(grid) == [[3], [0, 10, 32], [0, 6, 14, 96]]
        assert untile(grid, d) == f

    def test_iff_rejected(self, mice_cats):
        d, _ = mice_cats
        f = parse_proto("Mouse(x) <-> Cat(y)", d, allow_free=True)
        with pytest.raises(TilingError):
            tile(f, d)
        tile(expand_iff(f), d)

    def test_unregistered_symbol_rejected(self, mice_cats):
        d, _ = mice_cats
        with pytest.raises(TilingError):
            tile(Atom(7, ()), d)

    def test_deterministic(self, mice_cats):
        d, f = mice_cats
        assert tile(f, d) == tile(f, d)

    def test_function_arguments_flatten_depth_first(self):
        d, f = parse("forall Human.x Mortal(mother(mother(x)))")
        # sort Human -> 8, variable x -> 32, Mortal -> 10, mother -> 12
        assert grid_codes(tile(f, d)) == [[2, 32], [0, 10, 12, 12, 32]]
        assert untile(tile(f, d), d) == f

    def test_spacer_prefix_matches_nesting_depth(self):
        d, f = parse("forall S.x (P(x) -> forall S.y (Q(y) -> R(x)))")
        grid = grid_codes(tile(f, d))
        assert grid == [
            [2, 32],
            [0, 10, 32],
            [0, 6],
            [0, 0, 2, 96],
            [0, 0, 0, 14, 96],
            [0, 0, 0, 6, 18, 32],
        ]


class TestGridCodes:
    def test_mice_cats(self, mice_cats):
        d, f = mice_cats
        grid = tile(f, d)
        assert grid_codes(grid) == MICE_CATS_GRID

    def test_empty_grid(self):
        assert grid_codes(TilingGrid(())) == []

    def test_spacer_only_row_rejected(self):
        with pytest.raises(TilingError):
            TilingGrid(((SPACER,),))

    def test_round_trip_through_plain_codes(self, mice_cats):
        d, f = mice_cats
        grid = tile(f, d)
        assert grid_from_codes(grid_codes(grid)) == grid

    def test_interior_spacer_rejected(self):
        with pytest.raises(TilingError):
            TilingGrid(((2, SPACER, 32),))


class TestUntile:
    def test_mice_cats_inverse(self, mice_cats):
        d, f = mice_cats
        assert untile(tile(f, d), d) == f

    def test_grid_built_by_hand(self, mice_cats):
        d, f = mice_cats
        assert untile(grid_from_codes(MICE_CATS_GRID), d) == f

    def test_single_row_atom(self, mice_cats):
        d, _ = mice_cats
        expected = parse_proto("Mouse(x)", d, allow_free=True)
        assert untile(grid_from_codes([[10, 32]]), d) == expected

    def test_bare_connective_rejected(self, mice_cats):
        d, _ = mice_cats
        with pytest.raises(TilingError):
            untile(grid_from_codes([[4]]), d)

    def test_unknown_code_rejected(self, mice_cats):
        d, _ = mice_cats
        with pytest.raises(TilingError):
            untile(grid_from_codes([[22, 32]]), d)  # no fourth predicate registered

    def test_arity_mismatch_rejected(self, mice_cats):
        d, _ = mice_cats
        with pytest.raises(TilingError):
            untile(grid_from_codes([[18, 32]]), d)  # Hate is binary

    def test_quantifier_without_body_rejected(self, mice_cats):
        d, _ = mice_cats
        with pytest.raises(TilingError):
            untile(grid_from_codes([[2, 32]]), d)

    def test_empty_grid_rejected(self, mice_cats):
        d, _ = mice_cats
        with pytest.raises(TilingError):
            untile(TilingGrid(()), d)

    def test_round_trip_on_random_formulas(self):
        checked = 0
        for d, f in formula_stream(seed=4242, count=700, depth=4, iff_ok=False):
            grid = tile(f, d)
            assert untile(grid, d) == f
            assert tile(untile(grid, d), d) == grid
            checked += 1
        assert checked >= 500

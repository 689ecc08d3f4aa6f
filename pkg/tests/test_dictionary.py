import pytest

from para.dictionary import (
    FUNCTION,
    PREDICATE,
    SENTENCE_TEXT,
    SORT,
    Category,
    Kind,
    SymbolDictionary,
    align_translate,
    classify_code,
    code_for,
    constant_category,
    export_dict,
    import_dict,
    variable_category,
)
from para.errors import DictionaryError, NumerationError


def valuation(m):
    v = 0
    while m % 2 == 0:
        m //= 2
        v += 1
    return v


def brute_force_class_member(v, position):
    """position-th positive integer with 2-adic valuation exactly v,
    skipping the terminal codes 1..6."""
    found = 0
    m = 0
    while True:
        m += 1
        if m <= 6:
            continue
        if valuation(m) == v:
            found += 1
            if found == position:
                return m


class TestClassifyCode:
    def test_mice_cats_assignment_table(self):
        assert classify_code(32) == (variable_category(1), 1)
        assert classify_code(96) == (variable_category(1), 2)
        assert classify_code(10) == (PREDICATE, 1)
        assert classify_code(14) == (PREDICATE, 2)
        assert classify_code(18) == (PREDICATE, 3)

    def test_class_openers(self):
        assert classify_code(8) == (SORT, 1)
        assert classify_code(12) == (FUNCTION, 1)
        assert classify_code(16) == (constant_category(1), 1)
        assert classify_code(7) == (SENTENCE_TEXT, 1)

    def test_terminals(self):
        for m in range(1, 7):
            cat, ordinal = classify_code(m)
            assert cat.kind is Kind.TERMINAL
            assert ordinal == m

    def test_second_sort_constant(self):
        # first element of the sort-2 constant class is 2**6
        assert classify_code(64) == (constant_category(2), 1)

    def test_zero_rejected(self):
        with pytest.raises(NumerationError):
            classify_code(0)

    def test_partition_over_a_million(self):
        # every code lands in exactly one category and inverts exactly
        for m in range(1, 10**6 + 1):
            cat, ordinal = classify_code(m)
            assert ordinal >= 1
            if cat.kind is not Kind.TERMINAL:
                assert code_for(cat, ordinal) == m


class TestCodeFor:
    def test_sentence_codes_are_odd_from_seven(self):
        assert [code_for(SENTENCE_TEXT, n) for n in range(1, 6)] == [7, 9, 11, 13, 15]

    def test_known_rows(self):
        assert code_for(variable_category(1), 2) == 96
        assert code_for(SENTENCE_TEXT, 1) == 7

    def test_constant_sort3_second_by_brute_force(self):
        # sort-3 constants live at valuation 2*3+2 = 8
        expected = brute_force_class_member(8, 2)
        assert expected == 768
        assert code_for(constant_category(3), 2) == expected

    def test_each_class_matches_brute_force(self):
        cases = [
            (PREDICATE, 1),
            (FUNCTION, 2),
            (SORT, 3),
            (constant_category(1), 4),
            (variable_category(1), 5),
            (constant_category(2), 6),
            (variable_category(2), 7),
        ]
        for cat, v in cases:
            for n in range(1, 8):
                assert code_for(cat, n) == brute_force_class_member(v, n)

    def test_terminal_requests_rejected(self):
        with pytest.raises(NumerationError):
            code_for(Category(Kind.TERMINAL), 1)

    def test_monotone_in_ordinal(self):
        for cat in (SENTENCE_TEXT, PREDICATE, FUNCTION, SORT, constant_category(2), variable_category(3)):
            codes = [code_for(cat, n) for n in range(1, 200)]
            assert codes == sorted(codes)
            assert len(set(codes)) == len(codes)

    def test_inverse_deep_ordinals_and_sorts(self):
        for cat in [PREDICATE, FUNCTION, SORT] + [
            c(n) for n in (1, 2, 7, 20) for c in (constant_category, variable_category)
        ]:
            for ordinal in (1, 2, 3, 99, 10**4):
                assert classify_code(code_for(cat, ordinal)) == (cat, ordinal)


class TestSymbolDictionary:
    def test_first_registrations_open_their_classes(self):
        d = SymbolDictionary()
        assert d.register(PREDICATE, "Mouse", 1) == 10
        assert d.register(SORT, "Animal") == 8
        assert d.register(variable_category(1), "x") == 32
        assert d.register(variable_category(1), "y") == 96

    def test_duplicate_name_rejected(self):
        d = SymbolDictionary()
        d.register(PREDICATE, "Mouse", 1)
        with pytest.raises(DictionaryError):
            d.register(PREDICATE, "Mouse", 1)

    def test_same_name_allowed_across_categories(self):
        d = SymbolDictionary()
        d.register(SORT, "Animal")
        d.register(PREDICATE, "thing", 1)
        d.register(constant_category(1), "thing")
        assert d.constant_index("thing") == (1, 1)
        assert d.predicate_index("thing") == 1

    def test_arity_fixed_once(self):
        d = SymbolDictionary()
        d.register(PREDICATE, "Hate", 2)
        with pytest.raises(DictionaryError):
            d.fix_predicate_arity(1, 3)
        d.register(PREDICATE, "Rain")  # arity unknown until first use
        d.fix_predicate_arity(2, 0)
        assert d.predicate_arity(2) == 0

    def test_arity_on_sort_rejected(self):
        d = SymbolDictionary()
        with pytest.raises(DictionaryError):
            d.register(SORT, "Animal", 1)

    def test_copy_is_independent(self):
        d = SymbolDictionary()
        d.register(SORT, "Animal")
        dup = d.copy()
        dup.register(SORT, "Plant")
        assert d.sort_count() == 1
        assert dup.sort_count() == 2
        assert d != dup


class TestDocuments:
    def build_mice_cats(self):
        d = SymbolDictionary()
        d.register(SORT, "Animal")
        d.register(variable_category(1), "x")
        d.register(variable_category(1), "y")
        d.register(PREDICATE, "Mouse", 1)
        d.register(PREDICATE, "Cat", 1)
        d.register(PREDICATE, "Hate", 2)
        return d

    def test_round_trip(self):
        d = self.build_mice_cats()
        assert import_dict(export_dict(d)) == d

    def test_empty_round_trip(self):
        assert import_dict(export_dict(SymbolDictionary())) == SymbolDictionary()

    def test_round_trip_with_constants_and_functions(self):
        d = self.build_mice_cats()
        d.register(SORT, "Human")
        d.register(constant_category(2), "socrates")
        d.register(FUNCTION, "mother", 1)
        assert import_dict(export_dict(d)) == d

    def test_duplicate_predicate_rejected(self):
        doc = export_dict(self.build_mice_cats())
        doc["predicates"].append({"name": "Mouse", "arity": 1})
        with pytest.raises(DictionaryError):
            import_dict(doc)

    def test_version_mismatch_rejected(self):
        doc = export_dict(self.build_mice_cats())
        doc["version"] = 99
        with pytest.raises(DictionaryError):
            import_dict(doc)

    def test_unknown_sort_reference_rejected(self):
        doc = export_dict(self.build_mice_cats())
        doc["constants"].append({"name": "tom", "sort": "Ghost"})
        with pytest.raises(DictionaryError):
            import_dict(doc)


class TestAlignTranslate:
    def first_occurrence_dict(self):
        d = SymbolDictionary()
        from para.parser import parse_proto

        from conftest import MICE_CATS_TEXT

        return d, parse_proto(MICE_CATS_TEXT, d)

    def cat_first_dict(self):
        d = SymbolDictionary()
        d.register(SORT, "Animal")
        d.register(variable_category(1), "x")
        d.register(variable_category(1), "y")
        d.register(PREDICATE, "Cat", 1)
        d.register(PREDICATE, "Mouse", 1)
        d.register(PREDICATE, "Hate", 2)
        return d

    def test_reindexes_by_name(self):
        from para.printer import print_numeric, print_proto

        source = self.cat_first_dict()
        from para.parser import parse_proto

        from conftest import MICE_CATS_TEXT

        f = parse_proto(MICE_CATS_TEXT, source, auto_register=False)
        target, _ = self.first_occurrence_dict()
        moved = align_translate(f, source, target)
        # under the colleague's registration order Mouse was 14; under the
        # target it is back at 10, so the numeric forms differ but the
        # name-based text is identical
        assert "(P.2(1.1))" in print_numeric(f)
        assert "(P.1(1.1))" in print_numeric(moved)
        assert print_proto(moved, target) == print_proto(f, source)

    def test_identity_on_identical_dictionaries(self):
        d, f = self.first_occurrence_dict()
        assert align_translate(f, d, d.copy()) == f

    def test_missing_name_without_auto_registration(self):
        d, f = self.first_occurrence_dict()
        target = SymbolDictionary()
        target.register(SORT, "Animal")
        with pytest.raises(DictionaryError):
            align_translate(f, d, target)

    def test_auto_registration_fills_target(self):
        d, f = self.first_occurrence_dict()
        target = SymbolDictionary()
        moved = align_translate(f, d, target, auto_register=True)
        from para.printer import print_proto

        assert print_proto(moved, target) == print_proto(f, d)

    def test_arity_conflict_rejected(self):
        d, f = self.first_occurrence_dict()
        target = self.cat_first_dict()
        # same names, but Hate registered unary in the target
        conflicted = SymbolDictionary()
        conflicted.register(SORT, "Animal")
        conflicted.register(variable_category(1), "x")
        conflicted.register(variable_category(1), "y")
        conflicted.register(PREDICATE, "Mouse", 1)
        conflicted.register(PREDICATE, "Cat", 1)
        conflicted.register(PREDICATE, "Hate", 1)
        with pytest.raises(DictionaryError):
            align_translate(f, d, conflicted)

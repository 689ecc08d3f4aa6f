"""Symbol tables and the 2-adic numeration.

Every symbol a formula can mention is identified by a positive integer
code.  The positive integers are partitioned into disjoint classes by
their 2-adic valuation (the exponent of the largest power of two dividing
the number):

* 1..6                  -- terminal letters (quantifiers, connectives)
* odd >= 7              -- formalized-sentence indices
* valuation 1 (>= 10)   -- predicate names      {10, 14, 18, ...}
* valuation 2 (>= 12)   -- function names       {12, 20, 28, ...}
* valuation 3           -- sort (type) names    {8, 24, 40, ...}
* valuation 2n+2 (even) -- constants of sort n  {2^(2n+2) * odd}
* valuation 2n+3 (odd)  -- variables of sort n  {2^(2n+3) * odd}

The even classes at valuations 1 and 2 skip the terminal codes 2, 4 and 6,
which is why predicates start at 10 and functions at 12.

A :class:`SymbolDictionary` records which human-readable name owns each
ordinal of each class, so codes and names can be converted both ways.
"""

import enum
from dataclasses import dataclass
from functools import lru_cache

from .errors import DictionaryError, NumerationError

# Terminal letter codes (fixed by the numeration, never reassigned).
EXISTS_CODE = 1
FORALL_CODE = 2
NOT_CODE = 3
AND_CODE = 4
OR_CODE = 5
IMPLIES_CODE = 6

TERMINAL_CODES = range(1, 7)

DOCUMENT_VERSION = 1


class Kind(enum.Enum):
    TERMINAL = "terminal"
    SENTENCE_TEXT = "sentence_text"
    PREDICATE = "predicate"
    FUNCTION = "function"
    SORT = "sort"
    CONSTANT = "constant"
    VARIABLE = "variable"


@dataclass(frozen=True)
class Category:
    """A symbol class; constants and variables also carry their sort number."""

    kind: Kind
    type_n: int = 0

    def __post_init__(self):
        needs_type = self.kind in (Kind.CONSTANT, Kind.VARIABLE)
        if needs_type and self.type_n < 1:
            raise NumerationError(f"{self.kind.value} category needs a sort number >= 1")
        if not needs_type and self.type_n != 0:
            raise NumerationError(f"{self.kind.value} category carries no sort number")


TERMINAL = Category(Kind.TERMINAL)
SENTENCE_TEXT = Category(Kind.SENTENCE_TEXT)
PREDICATE = Category(Kind.PREDICATE)
FUNCTION = Category(Kind.FUNCTION)
SORT = Category(Kind.SORT)


@lru_cache(maxsize=None)
def constant_category(type_n):
    return Category(Kind.CONSTANT, type_n)


@lru_cache(maxsize=None)
def variable_category(type_n):
    return Category(Kind.VARIABLE, type_n)


def _valuation(m):
    """2-adic valuation of m (m > 0)."""
    return (m & -m).bit_length() - 1


def classify_code(m):
    """Map a positive integer to its (category, ordinal) pair.

    Ordinals count from 1 within each category; terminals report the code
    itself as ordinal.  Hot path: the inverse-pair acceptance check runs
    this over every code up to a million.
    """
    if m < 7:
        if m < 1:
            raise NumerationError(f"codes are positive integers, got {m}")
        return TERMINAL, m
    if m & 1:
        return SENTENCE_TEXT, ((m - 1) >> 1) - 2
    v = (m & -m).bit_length() - 1
    k = m >> (v + 1)  # odd part is 2k+1
    if v == 1:
        return PREDICATE, k - 1  # 2 and 6 belong to the terminals
    if v == 2:
        return FUNCTION, k  # 4 belongs to the terminals
    if v == 3:
        return SORT, k + 1
    if v & 1:
        return variable_category((v - 3) >> 1), k + 1
    return constant_category((v - 2) >> 1), k + 1


def code_for(cat, ordinal):
    """Inverse of :func:`classify_code` for the non-terminal categories."""
    if ordinal < 1:
        raise NumerationError(f"ordinals start at 1, got {ordinal}")
    kind = cat.kind
    if kind is Kind.SENTENCE_TEXT:
        return 2 * ordinal + 5
    if kind is Kind.PREDICATE:
        return 4 * ordinal + 6
    if kind is Kind.FUNCTION:
        return 8 * ordinal + 4
    if kind is Kind.SORT:
        return 16 * ordinal - 8
    if kind is Kind.CONSTANT:
        return (2 * ordinal - 1) << (2 * cat.type_n + 2)
    if kind is Kind.VARIABLE:
        return (2 * ordinal - 1) << (2 * cat.type_n + 3)
    raise NumerationError("terminal codes are fixed; none can be allocated")


class SymbolDictionary:
    """Bidirectional registry name <-> (category, ordinal) <-> numeric code.

    Names are unique within a category; ordinals are contiguous from 1 in
    registration order; predicate/function arity is fixed the first time it
    becomes known and enforced afterwards.
    """

    def __init__(self):
        self._sorts = []
        self._predicates = []
        self._pred_arity = {}  # ordinal -> arity, absent while unknown
        self._functions = []
        self._fn_arity = {}
        self._constants = {}  # type_n -> [names]
        self._variables = {}  # type_n -> [names]

    # -- queries -------------------------------------------------------

    def sort_count(self):
        return len(self._sorts)

    def predicate_count(self):
        return len(self._predicates)

    def function_count(self):
        return len(self._functions)

    def constant_count(self, type_n):
        return len(self._constants.get(type_n, ()))

    def variable_count(self, type_n):
        return len(self._variables.get(type_n, ()))

    def sort_name(self, ordinal):
        return self._name(self._sorts, ordinal, "sort")

    def predicate_name(self, ordinal):
        return self._name(self._predicates, ordinal, "predicate")

    def function_name(self, ordinal):
        return self._name(self._functions, ordinal, "function")

    def constant_name(self, type_n, ordinal):
        return self._name(self._constants.get(type_n, []), ordinal, "constant")

    def variable_name(self, type_n, ordinal):
        return self._name(self._variables.get(type_n, []), ordinal, "variable")

    @staticmethod
    def _name(names, ordinal, what):
        if not 1 <= ordinal <= len(names):
            raise DictionaryError(f"no {what} with ordinal {ordinal} is registered")
        return names[ordinal - 1]

    def sort_index(self, name):
        return self._index(self._sorts, name)

    def predicate_index(self, name):
        return self._index(self._predicates, name)

    def function_index(self, name):
        return self._index(self._functions, name)

    def constant_index(self, name):
        """(type_n, ordinal) of a constant name, searching sorts ascending."""
        return self._typed_index(self._constants, name)

    def variable_index(self, name):
        return self._typed_index(self._variables, name)

    def constant_in_sort(self, name, type_n):
        return self._index(self._constants.get(type_n, []), name)

    def variable_in_sort(self, name, type_n):
        return self._index(self._variables.get(type_n, []), name)

    @staticmethod
    def _index(names, name):
        try:
            return names.index(name) + 1
        except ValueError:
            return None

    @staticmethod
    def _typed_index(table, name):
        for type_n in sorted(table):
            if name in table[type_n]:
                return type_n, table[type_n].index(name) + 1
        return None

    def predicate_arity(self, ordinal):
        self._name(self._predicates, ordinal, "predicate")
        return self._pred_arity.get(ordinal)

    def function_arity(self, ordinal):
        self._name(self._functions, ordinal, "function")
        return self._fn_arity.get(ordinal)

    def iter_predicates(self):
        """Yields (ordinal, name, arity) in ordinal order."""
        for i, name in enumerate(self._predicates, start=1):
            yield i, name, self._pred_arity.get(i)

    def iter_functions(self):
        for i, name in enumerate(self._functions, start=1):
            yield i, name, self._fn_arity.get(i)

    def iter_sorts(self):
        for i, name in enumerate(self._sorts, start=1):
            yield i, name

    def iter_constants(self):
        """Yields (type_n, ordinal, name) grouped by sort, ordinal ascending."""
        for type_n in sorted(self._constants):
            for i, name in enumerate(self._constants[type_n], start=1):
                yield type_n, i, name

    def iter_variables(self):
        for type_n in sorted(self._variables):
            for i, name in enumerate(self._variables[type_n], start=1):
                yield type_n, i, name

    # -- mutation ------------------------------------------------------

    def register(self, cat, name, arity=None):
        """Append ``name`` to its category and return its numeric code."""
        if not name:
            raise DictionaryError("symbol names must be non-empty")
        takes_arity = cat.kind in (Kind.PREDICATE, Kind.FUNCTION)
        if arity is not None and not takes_arity:
            raise DictionaryError(f"{cat.kind.value} symbols carry no arity")
        if arity is not None and arity < 0:
            raise DictionaryError(f"arity must be >= 0, got {arity}")
        if cat.kind is Kind.SORT:
            names = self._sorts
        elif cat.kind is Kind.PREDICATE:
            names = self._predicates
        elif cat.kind is Kind.FUNCTION:
            names = self._functions
        elif cat.kind is Kind.CONSTANT:
            names = self._constants.setdefault(cat.type_n, [])
        elif cat.kind is Kind.VARIABLE:
            names = self._variables.setdefault(cat.type_n, [])
        else:
            raise DictionaryError(f"cannot register names in the {cat.kind.value} class")
        if name in names:
            raise DictionaryError(f"{cat.kind.value} {name!r} is already registered")
        names.append(name)
        ordinal = len(names)
        if arity is not None:
            (self._pred_arity if cat.kind is Kind.PREDICATE else self._fn_arity)[ordinal] = arity
        return code_for(cat, ordinal)

    def fix_predicate_arity(self, ordinal, arity):
        """Set a predicate's arity on first use; later mismatches are errors."""
        self._fix_arity(self._predicates, self._pred_arity, ordinal, arity, "predicate")

    def fix_function_arity(self, ordinal, arity):
        self._fix_arity(self._functions, self._fn_arity, ordinal, arity, "function")

    def _fix_arity(self, names, table, ordinal, arity, what):
        name = self._name(names, ordinal, what)
        known = table.get(ordinal)
        if known is None:
            table[ordinal] = arity
        elif known != arity:
            raise DictionaryError(
                f"{what} {name!r} has arity {known}, used with {arity} arguments"
            )

    def copy(self):
        dup = SymbolDictionary()
        dup._sorts = list(self._sorts)
        dup._predicates = list(self._predicates)
        dup._pred_arity = dict(self._pred_arity)
        dup._functions = list(self._functions)
        dup._fn_arity = dict(self._fn_arity)
        dup._constants = {k: list(v) for k, v in self._constants.items()}
        dup._variables = {k: list(v) for k, v in self._variables.items()}
        return dup

    def __eq__(self, other):
        if not isinstance(other, SymbolDictionary):
            return NotImplemented
        return (
            self._sorts == other._sorts
            and self._predicates == other._predicates
            and self._pred_arity == other._pred_arity
            and self._functions == other._functions
            and self._fn_arity == other._fn_arity
            and {k: v for k, v in self._constants.items() if v}
            == {k: v for k, v in other._constants.items() if v}
            and {k: v for k, v in self._variables.items() if v}
            == {k: v for k, v in other._variables.items() if v}
        )

    def __repr__(self):
        return (
            f"SymbolDictionary(sorts={len(self._sorts)}, predicates={len(self._predicates)},"
            f" functions={len(self._functions)},"
            f" constants={sum(map(len, self._constants.values()))},"
            f" variables={sum(map(len, self._variables.values()))})"
        )


# -- interchange documents ----------------------------------------------


def export_dict(d):
    """Dictionary -> plain-JSON document (see import_dict for the schema)."""
    return {
        "version": DOCUMENT_VERSION,
        "sorts": [name for _, name in d.iter_sorts()],
        "predicates": [{"name": n, "arity": a} for _, n, a in d.iter_predicates()],
        "functions": [{"name": n, "arity": a} for _, n, a in d.iter_functions()],
        "constants": [{"name": n, "sort": d.sort_name(t)} for t, _, n in d.iter_constants()],
        "variables": [{"name": n, "sort": d.sort_name(t)} for t, _, n in d.iter_variables()],
    }


def import_dict(doc):
    """Document -> dictionary; array order is ordinal order within each class.

    Schema: ``{version, sorts[], predicates[{name, arity}], functions[{name,
    arity}], constants[{name, sort}], variables[{name, sort}]}`` where
    constants/variables name their sort and arity may be null while unknown.
    """
    if not isinstance(doc, dict):
        raise DictionaryError("dictionary document must be a JSON object")
    version = doc.get("version")
    if version != DOCUMENT_VERSION:
        raise DictionaryError(f"unsupported dictionary document version {version!r}")
    d = SymbolDictionary()
    for name in _field(doc, "sorts"):
        d.register(SORT, _as_name(name))
    for entry in _field(doc, "predicates"):
        d.register(PREDICATE, _as_name(entry.get("name")), entry.get("arity"))
    for entry in _field(doc, "functions"):
        d.register(FUNCTION, _as_name(entry.get("name")), entry.get("arity"))
    for field, make_cat in (("constants", constant_category), ("variables", variable_category)):
        for entry in _field(doc, field):
            sort = d.sort_index(entry.get("sort"))
            if sort is None:
                raise DictionaryError(
                    f"{field} entry {entry.get('name')!r} names unknown sort {entry.get('sort')!r}"
                )
            d.register(make_cat(sort), _as_name(entry.get("name")))
    return d


def _field(doc, key):
    value = doc.get(key, [])
    if not isinstance(value, list):
        raise DictionaryError(f"dictionary document field {key!r} must be an array")
    return value


def _as_name(value):
    if not isinstance(value, str) or not value:
        raise DictionaryError(f"symbol names must be non-empty strings, got {value!r}")
    return value


# -- cross-dictionary translation -----------------------------------------


def align_translate(f, source, target, auto_register=False):
    """Re-index a formula so its names mean the same under ``target``.

    Every symbol the formula uses must exist in ``target`` with the same
    name, category and arity; with ``auto_register`` missing names are
    appended instead.  Printing the result under ``target`` renders the
    same text as printing the input under ``source``.
    """
    from . import fol

    def map_sort(index):
        name = source.sort_name(index)
        found = target.sort_index(name)
        if found is None:
            if not auto_register:
                raise DictionaryError(f"target dictionary lacks sort {name!r}")
            target.register(SORT, name)
            found = target.sort_index(name)
        return found

    def map_applied(kind, index, arity):
        if kind is Kind.PREDICATE:
            name, lookup, fix = source.predicate_name(index), target.predicate_index, target.fix_predicate_arity
            cat = PREDICATE
        else:
            name, lookup, fix = source.function_name(index), target.function_index, target.fix_function_arity
            cat = FUNCTION
        found = lookup(name)
        if found is None:
            if not auto_register:
                raise DictionaryError(f"target dictionary lacks {cat.kind.value} {name!r}")
            target.register(cat, name, arity)
            return lookup(name)
        fix(found, arity)  # raises on an arity conflict
        return found

    def map_typed(kind, sort_index, index):
        new_sort = map_sort(sort_index)
        if kind is Kind.CONSTANT:
            name = source.constant_name(sort_index, index)
            found = target.constant_in_sort(name, new_sort)
            cat = constant_category(new_sort)
        else:
            name = source.variable_name(sort_index, index)
            found = target.variable_in_sort(name, new_sort)
            cat = variable_category(new_sort)
        if found is None:
            if not auto_register:
                raise DictionaryError(f"target dictionary lacks {cat.kind.value} {name!r}")
            target.register(cat, name)
            found = len(
                target._constants[new_sort] if kind is Kind.CONSTANT else target._variables[new_sort]
            )
        return new_sort, found

    def walk_term(t):
        if isinstance(t, fol.Variable):
            sort, index = map_typed(Kind.VARIABLE, t.sort.index, t.index)
            return fol.Variable(fol.Sort(sort), index)
        if isinstance(t, fol.Constant):
            sort, index = map_typed(Kind.CONSTANT, t.sort.index, t.index)
            return fol.Constant(fol.Sort(sort), index)
        index = map_applied(Kind.FUNCTION, t.fn_index, len(t.args))
        return fol.FunctionApp(index, tuple(walk_term(a) for a in t.args))

    def walk(g):
        if isinstance(g, fol.Atom):
            index = map_applied(Kind.PREDICATE, g.pred_index, len(g.args))
            return fol.Atom(index, tuple(walk_term(a) for a in g.args))
        if isinstance(g, fol.Not):
            return fol.Not(walk(g.body))
        if isinstance(g, fol.Binary):
            return fol.Binary(g.connective, walk(g.left), walk(g.right))
        return fol.Quantified(g.quantifier, walk_term(g.var), walk(g.body))

    return walk(f)

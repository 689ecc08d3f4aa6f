"""Parenthesis-free 2D layout of formulas.

A formula becomes rows of cells; a cell is either a numeric code or a
spacer, and a row's leading spacers encode its nesting depth.  Layout
rules:

* a maximal quantifier prefix becomes one row of alternating quantifier
  and variable codes; its body is laid out one indent deeper;
* a binary connective lays out its left operand, then a row holding the
  connective code with the right operand inline when it is an atom, or
  the connective code alone with the right operand one indent deeper;
* a conjunction or disjunction of two atoms collapses onto a single row
  (left codes, connective code, right codes);
* an atom is its predicate code followed by its argument codes, function
  applications flattened depth-first;
* a negation prefixes code 3 to its operand's first row when the operand
  occupies a single segment at the current depth, and otherwise becomes a
  lone code 3 above the operand laid out one indent deeper.

``untile`` inverts the layout; connectives that share a row fold left to
right.
"""

from dataclasses import dataclass

from . import dictionary as dct
from .errors import TilingError
from .fol import (
    Atom,
    Binary,
    Connective,
    Constant,
    FunctionApp,
    Not,
    Quantified,
    Quantifier,
    Sort,
    Variable,
    contains_iff,
    validate,
)

SPACER = None

_CONNECTIVE_CODES = {
    Connective.AND: dct.AND_CODE,
    Connective.OR: dct.OR_CODE,
    Connective.IMPLIES: dct.IMPLIES_CODE,
}
_CODE_CONNECTIVES = {v: k for k, v in _CONNECTIVE_CODES.items()}
_QUANTIFIER_CODES = {
    Quantifier.EXISTS: dct.EXISTS_CODE,
    Quantifier.FORALL: dct.FORALL_CODE,
}
_CODE_QUANTIFIERS = {v: k for k, v in _QUANTIFIER_CODES.items()}


@dataclass(frozen=True)
class TilingGrid:
    rows: tuple  # of tuples of cells; a cell is a positive code or SPACER

    def __post_init__(self):
        rows = tuple(tuple(r) for r in self.rows)
        object.__setattr__(self, "rows", rows)
        for row in rows:
            if not row:
                raise TilingError("tiling rows must be non-empty")
            seen_code = False
            for cell in row:
                if cell is SPACER:
                    if seen_code:
                        raise TilingError("spacers may only lead a row")
                elif isinstance(cell, int) and cell >= 1:
                    seen_code = True
                else:
                    raise TilingError(f"cells are positive codes or spacers, got {cell!r}")
            if not seen_code:
                raise TilingError("tiling rows need at least one code")

    def __iter__(self):
        return iter(self.rows)


def grid_codes(g):
    """Rows as plain integers with 0 standing for a spacer."""
    return [[0 if cell is SPACER else cell for cell in row] for row in g.rows]


def grid_from_codes(rows):
    """Inverse of grid_codes (0 -> spacer)."""
    try:
        cells = tuple(tuple(SPACER if c == 0 else c for c in row) for row in rows)
    except TypeError:
        raise TilingError("a grid is a list of rows of integers") from None
    return TilingGrid(cells)


# -- encoding -------------------------------------------------------------


def tile(f, d):
    """Lay a registered, iff-free formula out as a TilingGrid."""
    if contains_iff(f):
        raise TilingError("expand <-> before tiling; the code table has no code for it")
    try:
        validate(f, d, allow_free=True)
    except Exception as exc:
        raise TilingError(str(exc)) from None
    rows = _lay(f, 0)
    return TilingGrid(tuple((SPACER,) * indent + tuple(codes) for indent, codes in rows))


def _lay(f, depth):
    if isinstance(f, Atom):
        return [(depth, _inline_atom(f))]
    if isinstance(f, Quantified):
        prefix = []
        while isinstance(f, Quantified):
            prefix.append(_QUANTIFIER_CODES[f.quantifier])
            prefix.extend(_term_codes(f.var))
            f = f.body
        return [(depth, prefix)] + _lay(f, depth + 1)
    if isinstance(f, Not):
        rows = _lay(f.body, depth)
        segments = sum(1 for indent, _ in rows if indent == depth)
        if segments == 1:
            indent, codes = rows[0]
            return [(indent, [dct.NOT_CODE] + codes)] + rows[1:]
        return [(depth, [dct.NOT_CODE])] + _lay(f.body, depth + 1)
    op = _CONNECTIVE_CODES[f.connective]
    if (
        f.connective in (Connective.AND, Connective.OR)
        and isinstance(f.left, Atom)
        and isinstance(f.right, Atom)
    ):
        return [(depth, _inline_atom(f.left) + [op] + _inline_atom(f.right))]
    rows = _lay(f.left, depth)
    if isinstance(f.right, Atom):
        return rows + [(depth, [op] + _inline_atom(f.right))]
    return rows + [(depth, [op])] + _lay(f.right, depth + 1)


def _inline_atom(atom):
    codes = [dct.code_for(dct.PREDICATE, atom.pred_index)]
    for arg in atom.args:
        codes.extend(_term_codes(arg))
    return codes


def _term_codes(t):
    if isinstance(t, Variable):
        return [dct.code_for(dct.variable_category(t.sort.index), t.index)]
    if isinstance(t, Constant):
        return [dct.code_for(dct.constant_category(t.sort.index), t.index)]
    codes = [dct.code_for(dct.FUNCTION, t.fn_index)]
    for arg in t.args:
        codes.extend(_term_codes(arg))
    return codes


# -- decoding -------------------------------------------------------------


def untile(g, d):
    """Rebuild the formula a grid lays out."""
    rows = []
    for row in g.rows:
        indent = 0
        while indent < len(row) and row[indent] is SPACER:
            indent += 1
        rows.append((indent, list(row[indent:])))
    if not rows:
        raise TilingError("cannot decode an empty grid")
    if rows[0][0] != 0:
        raise TilingError("the first row must start at indent 0")
    return _parse_block(rows, 0, d)


def _parse_block(rows, base, d):
    if not rows:
        raise TilingError("expected an indented block, found nothing")
    if rows[0][0] != base:
        raise TilingError(f"block starts at indent {rows[0][0]}, expected {base}")
    segments = []
    for indent, codes in rows:
        if indent < base:
            raise TilingError("rows may not outdent past their block")
        if indent == base:
            segments.append([(indent, codes)])
        else:
            segments[-1].append((indent, codes))
    formula = None
    for i, segment in enumerate(segments):
        formula = _parse_segment(segment, base, d, into=formula, first=i == 0)
    return formula


def _parse_segment(segment, base, d, into, first):
    codes = list(segment[0][1])
    deeper = segment[1:]
    negations = 0
    while codes and codes[0] == dct.NOT_CODE:
        negations += 1
        codes.pop(0)

    if codes and codes[0] in _CODE_QUANTIFIERS:
        formula = _parse_quantified(codes, deeper, base, d)
        return _finish_segment(formula, negations, into, first)

    if codes and codes[0] in _CODE_CONNECTIVES:
        if first:
            raise TilingError("a block cannot open with a dangling connective")
        if negations:
            raise TilingError("negation codes may not precede a row connective")
        op = _CODE_CONNECTIVES[codes.pop(0)]
        if codes:
            if deeper:
                raise TilingError("a connective row with an inline operand takes no sub-rows")
            right = _parse_row_formula(codes, d)
        else:
            if not deeper:
                raise TilingError("dangling connective: missing right operand")
            right = _parse_block(deeper, base + 1, d)
        return Binary(op, into, right)

    if not codes:
        if not deeper:
            raise TilingError("a row needs at least one code")
        formula = _parse_block(deeper, base + 1, d)
        return _finish_segment(formula, negations, into, first)

    if deeper:
        raise TilingError("unexpected indented rows under an inline row")
    formula = _parse_row_formula(codes, d)
    return _finish_segment(formula, negations, into, first)


def _finish_segment(formula, negations, into, first):
    for _ in range(negations):
        formula = Not(formula)
    if not first:
        raise TilingError("adjacent rows at one indent must be joined by a connective")
    return formula


def _parse_quantified(codes, deeper, base, d):
    binders = []
    while codes:
        q = codes.pop(0)
        if q not in _CODE_QUANTIFIERS:
            raise TilingError(f"expected a quantifier code, got {q}")
        if not codes:
            raise TilingError("quantifier code without a variable code")
        binders.append((_CODE_QUANTIFIERS[q], _decode_variable(codes.pop(0), d)))
    if not deeper:
        raise TilingError("quantifier row without a body")
    formula = _parse_block(deeper, base + 1, d)
    for quantifier, var in reversed(binders):
        formula = Quantified(quantifier, var, formula)
    return formula


def _parse_row_formula(codes, d):
    left = _parse_row_atom(codes, d)
    while codes:
        op = codes.pop(0)
        if op not in _CODE_CONNECTIVES:
            raise TilingError(f"expected a connective code between atoms, got {op}")
        if not codes:
            raise TilingError("dangling connective at the end of a row")
        left = Binary(_CODE_CONNECTIVES[op], left, _parse_row_atom(codes, d))
    return left


def _parse_row_atom(codes, d):
    code = codes.pop(0)
    cat, ordinal = dct.classify_code(code)
    if cat.kind is not dct.Kind.PREDICATE:
        raise TilingError(f"expected a predicate code, got {code}")
    _known(d.predicate_name, ordinal, code)
    arity = d.predicate_arity(ordinal)
    if arity is None:
        raise TilingError(f"predicate code {code} has no registered arity")
    return Atom(ordinal, tuple(_parse_term(codes, d) for _ in range(arity)))


def _parse_term(codes, d):
    if not codes:
        raise TilingError("row ended in the middle of an argument list")
    code = codes.pop(0)
    cat, ordinal = dct.classify_code(code)
    if cat.kind is dct.Kind.VARIABLE:
        _known(lambda o: d.variable_name(cat.type_n, o), ordinal, code)
        return Variable(Sort(cat.type_n), ordinal)
    if cat.kind is dct.Kind.CONSTANT:
        _known(lambda o: d.constant_name(cat.type_n, o), ordinal, code)
        return Constant(Sort(cat.type_n), ordinal)
    if cat.kind is dct.Kind.FUNCTION:
        _known(d.function_name, ordinal, code)
        arity = d.function_arity(ordinal)
        if arity is None:
            raise TilingError(f"function code {code} has no registered arity")
        return FunctionApp(ordinal, tuple(_parse_term(codes, d) for _ in range(arity)))
    raise TilingError(f"code {code} cannot appear in an argument list")


def _decode_variable(code, d):
    cat, ordinal = dct.classify_code(code)
    if cat.kind is not dct.Kind.VARIABLE:
        raise TilingError(f"expected a variable code after a quantifier, got {code}")
    _known(lambda o: d.variable_name(cat.type_n, o), ordinal, code)
    return Variable(Sort(cat.type_n), ordinal)


def _known(lookup, ordinal, code):
    try:
        lookup(ordinal)
    except Exception:
        raise TilingError(f"code {code} is not registered in the dictionary") from None

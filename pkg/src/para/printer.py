"""Printers for the three sentence notations.

``print_proto`` emits the parseable ASCII syntax using dictionary names;
``print_numeric`` the per-category index notation; ``print_sticks`` the
same layout with every index drawn as tally marks.
"""

from .errors import DictionaryError
from .fol import Atom, Binary, Connective, Constant, FunctionApp, Not, Quantified, Quantifier, Variable

_PREC = {
    Connective.IFF: 1,
    Connective.IMPLIES: 2,
    Connective.OR: 3,
    Connective.AND: 4,
}
_RIGHT_ASSOC = {Connective.IMPLIES}

UNICODE_SYMBOLS = {
    Quantifier.FORALL: "∀",  # forall
    Quantifier.EXISTS: "∃",  # exists
    "not": "¬",
    Connective.AND: "∧",
    Connective.OR: "∨",
    Connective.IMPLIES: "⊃",  # horseshoe
    Connective.IFF: "≡",
}
ASCII_SYMBOLS = {
    Quantifier.FORALL: "forall",
    Quantifier.EXISTS: "exists",
    "not": "~",
    Connective.AND: "&",
    Connective.OR: "|",
    Connective.IMPLIES: "->",
    Connective.IFF: "<->",
}


def print_proto(f, d):
    """Name-based notation; parse_proto(print_proto(f)) reproduces f."""
    return _proto(f, d)


def _proto(f, d):
    if isinstance(f, Atom):
        name = d.predicate_name(f.pred_index)
        if not f.args:
            return name
        return f"{name}({','.join(_proto_term(a, d) for a in f.args)})"
    if isinstance(f, Not):
        return "~" + _proto_operand(f.body, d)
    if isinstance(f, Quantified):
        keyword = "forall" if f.quantifier is Quantifier.FORALL else "exists"
        sort = d.sort_name(f.var.sort.index)
        name = d.variable_name(f.var.sort.index, f.var.index)
        return f"{keyword} {sort}.{name} {_proto_operand(f.body, d)}"
    op = f.connective
    left = _proto_child(f.left, d, op, right=False)
    right = _proto_child(f.right, d, op, right=True)
    return f"{left} {op.value} {right}"


def _proto_operand(f, d):
    # body of ~ or a quantifier: anything but a binary goes bare
    if isinstance(f, Binary):
        return f"({_proto(f, d)})"
    return _proto(f, d)


def _proto_child(f, d, op, right):
    if not isinstance(f, Binary):
        return _proto(f, d)
    mine, theirs = _PREC[op], _PREC[f.connective]
    if op in _RIGHT_ASSOC:
        needs = theirs <= mine if not right else theirs < mine
    else:
        needs = theirs < mine if not right else theirs <= mine
    return f"({_proto(f, d)})" if needs else _proto(f, d)


def _proto_term(t, d):
    if isinstance(t, Variable):
        return d.variable_name(t.sort.index, t.index)
    if isinstance(t, Constant):
        return d.constant_name(t.sort.index, t.index)
    name = d.function_name(t.fn_index)
    return f"{name}({','.join(_proto_term(a, d) for a in t.args)})"


def print_numeric(f, ascii_fallback=False):
    """Index notation of the numbered grammar, e.g. ∀(1.1)(P.1(1.1))."""
    symbols = ASCII_SYMBOLS if ascii_fallback else UNICODE_SYMBOLS
    return _indexed(f, str, symbols)


def print_sticks(f, ascii_fallback=False):
    """Like print_numeric but every index i is drawn as i tally marks."""
    symbols = ASCII_SYMBOLS if ascii_fallback else UNICODE_SYMBOLS
    return _indexed(f, lambda i: "|" * i, symbols)


def _indexed(f, num, symbols):
    if isinstance(f, Atom):
        if not f.args:
            return f"(P.{num(f.pred_index)})"
        args = ",".join(_indexed_term(a, num) for a in f.args)
        return f"(P.{num(f.pred_index)}({args}))"
    if isinstance(f, Not):
        return symbols["not"] + _indexed_operand(f.body, num, symbols)
    if isinstance(f, Quantified):
        head = f"{symbols[f.quantifier]}({num(f.var.sort.index)}.{num(f.var.index)})"
        return head + _indexed_operand(f.body, num, symbols)
    left = _indexed_child(f.left, num, symbols, f.connective, right=False)
    right = _indexed_child(f.right, num, symbols, f.connective, right=True)
    return f"{left}{symbols[f.connective]}{right}"


def _indexed_operand(f, num, symbols):
    if isinstance(f, Binary):
        return f"({_indexed(f, num, symbols)})"
    return _indexed(f, num, symbols)


def _indexed_child(f, num, symbols, op, right):
    if not isinstance(f, Binary):
        return _indexed(f, num, symbols)
    mine, theirs = _PREC[op], _PREC[f.connective]
    if op in _RIGHT_ASSOC:
        needs = theirs <= mine if not right else theirs < mine
    else:
        needs = theirs < mine if not right else theirs <= mine
    return f"({_indexed(f, num, symbols)})" if needs else _indexed(f, num, symbols)


def _indexed_term(t, num):
    if isinstance(t, Variable):
        return f"{num(t.sort.index)}.{num(t.index)}"
    if isinstance(t, Constant):
        return f"(C.{num(t.sort.index)}.{num(t.index)})"
    args = ",".join(_indexed_term(a, num) for a in t.args)
    return f"(F.{num(t.fn_index)}({args}))"

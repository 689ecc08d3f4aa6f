"""Sorted first-order logic syntax trees.

Symbols appear in the tree as (category, ordinal) indices only; the names
live in a :class:`~para.dictionary.SymbolDictionary`.  All nodes are frozen,
so structural equality and hashing come for free and trees can be shared
between threads.
"""

import enum
from dataclasses import dataclass

from .errors import DictionaryError, ParaError


class Connective(enum.Enum):
    AND = "&"
    OR = "|"
    IMPLIES = "->"
    IFF = "<->"


class Quantifier(enum.Enum):
    EXISTS = "exists"
    FORALL = "forall"


@dataclass(frozen=True)
class Sort:
    index: int

    def __post_init__(self):
        if self.index < 1:
            raise ParaError(f"sort indices start at 1, got {self.index}")


@dataclass(frozen=True)
class Variable:
    sort: Sort
    index: int

    def __post_init__(self):
        if self.index < 1:
            raise ParaError(f"variable indices start at 1, got {self.index}")


@dataclass(frozen=True)
class Constant:
    sort: Sort
    index: int

    def __post_init__(self):
        if self.index < 1:
            raise ParaError(f"constant indices start at 1, got {self.index}")


@dataclass(frozen=True)
class FunctionApp:
    fn_index: int
    args: tuple

    def __post_init__(self):
        if self.fn_index < 1:
            raise ParaError(f"function indices start at 1, got {self.fn_index}")
        object.__setattr__(self, "args", tuple(self.args))


@dataclass(frozen=True)
class Atom:
    pred_index: int
    args: tuple

    def __post_init__(self):
        if self.pred_index < 1:
            raise ParaError(f"predicate indices start at 1, got {self.pred_index}")
        object.__setattr__(self, "args", tuple(self.args))


@dataclass(frozen=True)
class Not:
    body: "Formula"


@dataclass(frozen=True)
class Binary:
    connective: Connective
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Quantified:
    quantifier: Quantifier
    var: Variable
    body: "Formula"


Term = Variable | Constant | FunctionApp
Formula = Atom | Not | Binary | Quantified


def term_sort(t):
    """Sort of a term, or None for function applications (no result sorts)."""
    if isinstance(t, (Variable, Constant)):
        return t.sort
    return None


def term_vars(t):
    """All variables occurring in a term."""
    if isinstance(t, Variable):
        return frozenset((t,))
    if isinstance(t, Constant):
        return frozenset()
    out = frozenset()
    for a in t.args:
        out |= term_vars(a)
    return out


def free_vars(f):
    """Variables with at least one free occurrence in f."""
    if isinstance(f, Atom):
        out = frozenset()
        for a in f.args:
            out |= term_vars(a)
        return out
    if isinstance(f, Not):
        return free_vars(f.body)
    if isinstance(f, Binary):
        return free_vars(f.left) | free_vars(f.right)
    return free_vars(f.body) - {f.var}


def all_vars(f):
    """Every variable occurring in f, bound or free."""
    if isinstance(f, Atom):
        out = frozenset()
        for a in f.args:
            out |= term_vars(a)
        return out
    if isinstance(f, Not):
        return all_vars(f.body)
    if isinstance(f, Binary):
        return all_vars(f.left) | all_vars(f.right)
    return all_vars(f.body) | {f.var}


def substitute_term(t, var, replacement):
    if isinstance(t, Variable):
        return replacement if t == var else t
    if isinstance(t, Constant):
        return t
    return FunctionApp(t.fn_index, tuple(substitute_term(a, var, replacement) for a in t.args))


def substitute(f, var, t):
    """Replace free occurrences of ``var`` by ``t``, renaming binders that
    would capture a variable of ``t``.

    The replacement's sort must match the variable's; function applications
    carry no result sort and are accepted for any variable.
    """
    t_sort = term_sort(t)
    if t_sort is not None and t_sort != var.sort:
        raise ParaError(
            f"cannot substitute a term of sort {t_sort.index} for a variable of sort {var.sort.index}"
        )
    return _subst(f, var, t, term_vars(t))


def _subst(f, var, t, t_vars):
    if isinstance(f, Atom):
        return Atom(f.pred_index, tuple(substitute_term(a, var, t) for a in f.args))
    if isinstance(f, Not):
        return Not(_subst(f.body, var, t, t_vars))
    if isinstance(f, Binary):
        return Binary(f.connective, _subst(f.left, var, t, t_vars), _subst(f.right, var, t, t_vars))
    if f.var == var:
        return f  # occurrences below are bound
    if var not in free_vars(f.body):
        return f
    binder = f.var
    body = f.body
    if binder in t_vars:
        fresh = _fresh_variable(binder.sort, all_vars(body) | t_vars | {var})
        body = _subst(body, binder, fresh, frozenset((fresh,)))
        binder = fresh
    return Quantified(f.quantifier, binder, _subst(body, var, t, t_vars))


def _fresh_variable(sort, taken):
    used = {v.index for v in taken if v.sort == sort}
    index = 1
    while index in used:
        index += 1
    return Variable(sort, index)


def expand_iff(f):
    """Replace every ``a <-> b`` by ``(a -> b) & (b -> a)``."""
    if isinstance(f, Atom):
        return f
    if isinstance(f, Not):
        return Not(expand_iff(f.body))
    if isinstance(f, Binary):
        left = expand_iff(f.left)
        right = expand_iff(f.right)
        if f.connective is Connective.IFF:
            return Binary(
                Connective.AND,
                Binary(Connective.IMPLIES, left, right),
                Binary(Connective.IMPLIES, right, left),
            )
        return Binary(f.connective, left, right)
    return Quantified(f.quantifier, f.var, expand_iff(f.body))


def contains_iff(f):
    if isinstance(f, Atom):
        return False
    if isinstance(f, Not):
        return contains_iff(f.body)
    if isinstance(f, Binary):
        return (
            f.connective is Connective.IFF or contains_iff(f.left) or contains_iff(f.right)
        )
    return contains_iff(f.body)


def validate(f, d, allow_free=False):
    """Well-formedness against a dictionary.

    Checks that every index is registered and that applications match the
    registered arity; a predicate or function whose arity is still unknown
    has it fixed by its first application here.  Unless ``allow_free``,
    every variable must be bound by an enclosing quantifier.
    """
    _validate(f, d, frozenset())
    if not allow_free:
        free = free_vars(f)
        if free:
            v = min(free, key=lambda v: (v.sort.index, v.index))
            raise DictionaryError(
                f"unbound variable {_describe_variable(v, d)} (free variables are disallowed)"
            )


def _validate(f, d, bound):
    if isinstance(f, Atom):
        d.predicate_name(f.pred_index)
        d.fix_predicate_arity(f.pred_index, len(f.args))
        for a in f.args:
            _validate_term(a, d)
    elif isinstance(f, Not):
        _validate(f.body, d, bound)
    elif isinstance(f, Binary):
        _validate(f.left, d, bound)
        _validate(f.right, d, bound)
    else:
        _validate_term(f.var, d)
        _validate(f.body, d, bound | {f.var})


def _validate_term(t, d):
    if isinstance(t, Variable):
        d.sort_name(t.sort.index)
        d.variable_name(t.sort.index, t.index)
    elif isinstance(t, Constant):
        d.sort_name(t.sort.index)
        d.constant_name(t.sort.index, t.index)
    else:
        d.function_name(t.fn_index)
        d.fix_function_arity(t.fn_index, len(t.args))
        for a in t.args:
            _validate_term(a, d)


def _describe_variable(v, d):
    try:
        return f"{d.sort_name(v.sort.index)}.{d.variable_name(v.sort.index, v.index)}"
    except DictionaryError:
        return f"({v.sort.index}.{v.index})"

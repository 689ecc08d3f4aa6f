"""Recursive-descent parser for the ASCII formula syntax.

Grammar (precedence low to high, ``->`` right-associative, ``&``/``|``/
``<->`` left-associative)::

    formula := implies ('<->' implies)*
    implies := or ('->' implies)?
    or      := and ('|' and)*
    and     := unary ('&' unary)*
    unary   := '~' unary
             | ('forall' | 'exists') binder unary
             | '(' formula ')'
             | atom
    binder  := NAME '.' NAME | NAME           -- Sort.var or bare var
    atom    := NAME ['(' term (',' term)* ')']
    term    := NAME '(' term (',' term)* ')'  -- function application
             | NAME                           -- variable or constant

Unknown names are registered on first occurrence when auto-registration is
on: binder sorts as sorts, binder names as variables of that sort, formula-
level applications as predicates, term-level applications as functions, and
bare term names as constants of the default sort.  A failed parse leaves
the dictionary untouched.
"""

import re

from . import dictionary as dct
from .errors import DictionaryError, ParseError
from .fol import Atom, Binary, Connective, Constant, FunctionApp, Not, Quantified, Quantifier, Sort, Variable

DEFAULT_SORT = "Thing"

_TOKEN = re.compile(r"\s*(->|<->|[()&|~,.]|[A-Za-z_][A-Za-z0-9_]*)")

_KEYWORDS = {"forall", "exists"}

_CONNECTIVES = {
    "&": Connective.AND,
    "|": Connective.OR,
    "->": Connective.IMPLIES,
    "<->": Connective.IFF,
}


def tokenize(text):
    """(kind, value, position) triples; kind is 'name', 'op' or 'kw'."""
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            at = len(text) - len(stripped)
            raise ParseError(f"unexpected character {stripped[0]!r}", at)
        value = m.group(1)
        at = m.end(1) - len(value)
        if value[0].isalpha() or value[0] == "_":
            tokens.append(("kw" if value in _KEYWORDS else "name", value, at))
        else:
            tokens.append(("op", value, at))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text, d, auto_register, allow_free, default_sort):
        self.text = text
        self.tokens = tokenize(text)
        self.pos = 0
        self.dict = d
        self.auto_register = auto_register
        self.allow_free = allow_free
        self.default_sort = default_sort
        self.scope = []  # innermost binder last: (name, Variable)

    # -- token helpers ---------------------------------------------------

    def _peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else (None, None, len(self.text))

    def _next(self):
        tok = self._peek()
        self.pos += 1
        return tok

    def _expect_op(self, value):
        kind, got, at = self._next()
        if kind != "op" or got != value:
            raise ParseError(f"expected {value!r}, found {got!r}" if got else f"expected {value!r}", at)

    def _fail(self, message):
        raise ParseError(message, self._peek()[2])

    # -- grammar ----------------------------------------------------------

    def formula(self):
        left = self.implies()
        while self._peek()[:2] == ("op", "<->"):
            self._next()
            left = Binary(Connective.IFF, left, self.implies())
        return left

    def implies(self):
        left = self.or_()
        if self._peek()[:2] == ("op", "->"):
            self._next()
            return Binary(Connective.IMPLIES, left, self.implies())
        return left

    def or_(self):
        left = self.and_()
        while self._peek()[:2] == ("op", "|"):
            self._next()
            left = Binary(Connective.OR, left, self.and_())
        return left

    def and_(self):
        left = self.unary()
        while self._peek()[:2] == ("op", "&"):
            self._next()
            left = Binary(Connective.AND, left, self.unary())
        return left

    def unary(self):
        kind, value, at = self._peek()
        if kind == "op" and value == "~":
            self._next()
            return Not(self.unary())
        if kind == "kw":
            self._next()
            quantifier = Quantifier.FORALL if value == "forall" else Quantifier.EXISTS
            name, var = self.binder()
            self.scope.append((name, var))
            try:
                body = self.unary()
            finally:
                self.scope.pop()
            return Quantified(quantifier, var, body)
        if kind == "op" and value == "(":
            self._next()
            inner = self.formula()
            self._expect_op(")")
            return inner
        if kind == "name":
            return self.atom()
        self._fail("expected a formula" if value is None else f"unexpected {value!r}")

    def binder(self):
        kind, first, at = self._next()
        if kind != "name":
            raise ParseError("expected a binder name after the quantifier", at)
        if self._peek()[:2] == ("op", "."):
            self._next()
            kind, var_name, vat = self._next()
            if kind != "name":
                raise ParseError(f"expected a variable name after {first!r}.", vat)
            sort_index = self._resolve_sort(first, at)
        else:
            var_name, vat = first, at
            known = self.dict.variable_index(var_name)
            if known is not None:
                sort_index = known[0]
            else:
                sort_index = self._resolve_sort(self.default_sort, at)
        ordinal = self.dict.variable_in_sort(var_name, sort_index)
        if ordinal is None:
            if not self.auto_register:
                raise ParseError(f"unknown variable {var_name!r}", vat)
            self.dict.register(dct.variable_category(sort_index), var_name)
            ordinal = self.dict.variable_in_sort(var_name, sort_index)
        return var_name, Variable(Sort(sort_index), ordinal)

    def _resolve_sort(self, name, at):
        index = self.dict.sort_index(name)
        if index is None:
            if not self.auto_register:
                raise ParseError(f"unknown sort {name!r}", at)
            self.dict.register(dct.SORT, name)
            index = self.dict.sort_index(name)
        return index

    def atom(self):
        kind, name, at = self._next()
        args = ()
        if self._peek()[:2] == ("op", "("):
            args = self.arg_list()
        index = self.dict.predicate_index(name)
        if index is None:
            if not self.auto_register:
                raise ParseError(f"unknown predicate {name!r}", at)
            self.dict.register(dct.PREDICATE, name, len(args))
            index = self.dict.predicate_index(name)
        else:
            self._fix_arity(self.dict.fix_predicate_arity, index, len(args), at)
        return Atom(index, args)

    def arg_list(self):
        self._expect_op("(")
        args = [self.term()]
        while self._peek()[:2] == ("op", ","):
            self._next()
            args.append(self.term())
        self._expect_op(")")
        return tuple(args)

    def term(self):
        kind, name, at = self._next()
        if kind != "name":
            raise ParseError("expected a term" if name is None else f"unexpected {name!r} in a term", at)
        if self._peek()[:2] == ("op", "("):
            args = self.arg_list()
            index = self.dict.function_index(name)
            if index is None:
                if not self.auto_register:
                    raise ParseError(f"unknown function {name!r}", at)
                self.dict.register(dct.FUNCTION, name, len(args))
                index = self.dict.function_index(name)
            else:
                self._fix_arity(self.dict.fix_function_arity, index, len(args), at)
            return FunctionApp(index, args)
        for bound_name, var in reversed(self.scope):
            if bound_name == name:
                return var
        free = self.dict.variable_index(name)
        if free is not None:
            if not self.allow_free:
                raise ParseError(f"variable {name!r} is not bound by any quantifier", at)
            return Variable(Sort(free[0]), free[1])
        known = self.dict.constant_index(name)
        if known is not None:
            return Constant(Sort(known[0]), known[1])
        if not self.auto_register:
            raise ParseError(f"unknown constant {name!r}", at)
        sort_index = self._resolve_sort(self.default_sort, at)
        self.dict.register(dct.constant_category(sort_index), name)
        return Constant(Sort(sort_index), self.dict.constant_in_sort(name, sort_index))

    def _fix_arity(self, fix, index, arity, at):
        try:
            fix(index, arity)
        except DictionaryError as exc:
            raise ParseError(str(exc), at) from None


def parse_proto(text, d, auto_register=True, allow_free=False, default_sort=DEFAULT_SORT):
    """Parse the ASCII surface syntax into a Formula.

    New names are registered into ``d`` in first-occurrence order when
    ``auto_register`` is on; on any error ``d`` is left exactly as it was.
    """
    scratch = d.copy()
    parser = _Parser(text, scratch, auto_register, allow_free, default_sort)
    formula = parser.formula()
    kind, value, at = parser._peek()
    if kind is not None:
        raise ParseError(f"unexpected {value!r} after the formula", at)
    _adopt(d, scratch)
    return formula


def _adopt(target, scratch):
    target._sorts = scratch._sorts
    target._predicates = scratch._predicates
    target._pred_arity = scratch._pred_arity
    target._functions = scratch._functions
    target._fn_arity = scratch._fn_arity
    target._constants = scratch._constants
    target._variables = scratch._variables

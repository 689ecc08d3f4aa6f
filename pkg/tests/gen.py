"""Seeded random-formula generator shared by the property tests.

Symbol names are globally unique across categories so that round trips are
never confused by name shadowing (a documented limitation of the surface
syntax, not of the tree).
"""

import random

from para.dictionary import PREDICATE, SORT, SymbolDictionary, constant_category, variable_category
from para.fol import Atom, Binary, Connective, Not, Quantified, Quantifier, Sort, Variable, Constant

CONNECTIVES = [Connective.AND, Connective.OR, Connective.IMPLIES, Connective.IFF]


def build_vocabulary(n_sorts=2, n_vars=3, n_consts=2, preds=((1, 1), (2, 1), (3, 2))):
    """Dictionary with sorts S1.., variables v{s}_{i}, constants c{s}_{i}
    and predicates P1.. with the given (index, arity) pairs."""
    d = SymbolDictionary()
    for s in range(1, n_sorts + 1):
        d.register(SORT, f"S{s}")
        for i in range(1, n_vars + 1):
            d.register(variable_category(s), f"v{s}_{i}")
        for i in range(1, n_consts + 1):
            d.register(constant_category(s), f"c{s}_{i}")
    arities = []
    for index, arity in preds:
        d.register(PREDICATE, f"P{index}", arity)
        arities.append(arity)
    return d, arities


def random_term(rng, scope, n_sorts, n_consts):
    in_scope = list(scope)
    if in_scope and rng.random() < 0.7:
        return rng.choice(in_scope)
    s = rng.randint(1, n_sorts)
    return Constant(Sort(s), rng.randint(1, n_consts))


def random_formula(rng, arities, depth, scope=(), n_sorts=2, n_vars=3, n_consts=2, iff_ok=True):
    """A closed formula of nesting depth at most ``depth``."""
    scope = tuple(scope)
    if depth == 0 or rng.random() < 0.25:
        index = rng.randint(1, len(arities))
        args = tuple(random_term(rng, scope, n_sorts, n_consts) for _ in range(arities[index - 1]))
        return Atom(index, args)
    kind = rng.choice(["not", "binary", "quantified", "quantified"])
    if kind == "not":
        return Not(random_formula(rng, arities, depth - 1, scope, n_sorts, n_vars, n_consts, iff_ok))
    if kind == "binary":
        ops = CONNECTIVES if iff_ok else CONNECTIVES[:3]
        return Binary(
            rng.choice(ops),
            random_formula(rng, arities, depth - 1, scope, n_sorts, n_vars, n_consts, iff_ok),
            random_formula(rng, arities, depth - 1, scope, n_sorts, n_vars, n_consts, iff_ok),
        )
    var = Variable(Sort(rng.randint(1, n_sorts)), rng.randint(1, n_vars))
    quantifier = rng.choice([Quantifier.FORALL, Quantifier.EXISTS])
    body = random_formula(rng, arities, depth - 1, scope + (var,), n_sorts, n_vars, n_consts, iff_ok)
    return Quantified(quantifier, var, body)


def formula_stream(seed, count, depth, **kwargs):
    rng = random.Random(seed)
    d, arities = build_vocabulary()
    for _ in range(count):
        yield d, random_formula(rng, arities, depth, **kwargs)

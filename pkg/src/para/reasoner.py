"""Bounded automated reasoning: clausification, resolution, finite models.

``refute`` runs a given-clause saturation loop (smallest clause first,
insertion order breaking ties) with binary resolution and factoring, and
returns a replayable trace.  Sorts are honored throughout: a variable
unifies only with terms of its sort, and Skolem symbols remember the sort
of the quantifier that introduced them.  ``finite_model_check`` is the
independent brute-force oracle used to test soundness; it enumerates
interpretations over small per-sort domains with truth-value pruning.
"""

import enum
import heapq
import itertools
import time
from dataclasses import dataclass, field

from .dictionary import FUNCTION, constant_category
from .errors import ParaError
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
    expand_iff,
    free_vars,
    term_sort,
)

# -- literals and clauses ---------------------------------------------------


@dataclass(frozen=True)
class Literal:
    positive: bool
    pred_index: int
    args: tuple

    def __post_init__(self):
        object.__setattr__(self, "args", tuple(self.args))

    def negated(self):
        return Literal(not self.positive, self.pred_index, self.args)

    def atom(self):
        return Literal(True, self.pred_index, self.args)


def clause_vars(literals):
    seen = set()
    for lit in literals:
        for arg in lit.args:
            seen |= _term_variables(arg)
    return seen


def _term_variables(t):
    if isinstance(t, Variable):
        return {t}
    if isinstance(t, Constant):
        return set()
    out = set()
    for a in t.args:
        out |= _term_variables(a)
    return out


def is_tautology(literals):
    return any(lit.negated() in literals for lit in literals)


def clause_key(literals):
    """Hashable form invariant under consistent variable renaming."""
    ordered = sorted(literals, key=_literal_order)
    naming = {}

    def term_key(t):
        if isinstance(t, Variable):
            if t not in naming:
                naming[t] = len(naming)
            return ("v", t.sort.index, naming[t])
        if isinstance(t, Constant):
            return ("c", t.sort.index, t.index)
        return ("f", t.fn_index) + tuple(term_key(a) for a in t.args)

    return tuple(
        (lit.positive, lit.pred_index) + tuple(term_key(a) for a in lit.args)
        for lit in ordered
    )


def _literal_order(lit):
    return (lit.pred_index, not lit.positive, _term_order_key(lit.args))


def _term_order_key(args):
    parts = []
    for t in args:
        if isinstance(t, Variable):
            parts.append((0, t.sort.index, t.index))
        elif isinstance(t, Constant):
            parts.append((1, t.sort.index, t.index))
        else:
            parts.append((2, t.fn_index) + _term_order_key(t.args))
    return tuple(parts)


# -- substitutions and unification -------------------------------------------


def _walk(t, subst):
    while isinstance(t, Variable) and t in subst:
        t = subst[t]
    return t


def apply_subst(t, subst):
    t = _walk(t, subst)
    if isinstance(t, (Variable, Constant)):
        return t
    return FunctionApp(t.fn_index, tuple(apply_subst(a, subst) for a in t.args))


def apply_subst_literal(lit, subst):
    return Literal(lit.positive, lit.pred_index, tuple(apply_subst(a, subst) for a in lit.args))


def _occurs(var, t, subst):
    t = _walk(t, subst)
    if t == var:
        return True
    if isinstance(t, FunctionApp):
        return any(_occurs(var, a, subst) for a in t.args)
    return False


def _result_sort(t, fn_sorts):
    if isinstance(t, (Variable, Constant)):
        return t.sort
    sort_index = (fn_sorts or {}).get(t.fn_index)
    return None if sort_index is None else Sort(sort_index)


def unify(t1, t2, subst=None, fn_sorts=None):
    """Most general unifier of two terms or two literals, or None.

    Occurs check on; a variable binds only to terms of its sort (function
    applications without a known result sort are unconstrained).
    """
    if isinstance(t1, Literal) or isinstance(t2, Literal):
        if not (isinstance(t1, Literal) and isinstance(t2, Literal)):
            raise ParaError("cannot unify a literal with a term")
        if t1.pred_index != t2.pred_index or len(t1.args) != len(t2.args):
            return None
        subst = dict(subst) if subst else {}
        for a, b in zip(t1.args, t2.args):
            subst = unify(a, b, subst, fn_sorts)
            if subst is None:
                return None
        return subst
    return _unify_terms(t1, t2, dict(subst) if subst else {}, fn_sorts)


def _unify_terms(a, b, subst, fn_sorts):
    a = _walk(a, subst)
    b = _walk(b, subst)
    if a == b:
        return subst
    if isinstance(a, Variable):
        return _bind(a, b, subst, fn_sorts)
    if isinstance(b, Variable):
        return _bind(b, a, subst, fn_sorts)
    if isinstance(a, Constant) or isinstance(b, Constant):
        return None  # distinct constants, or constant vs function
    if a.fn_index != b.fn_index or len(a.args) != len(b.args):
        return None
    for x, y in zip(a.args, b.args):
        subst = _unify_terms(x, y, subst, fn_sorts)
        if subst is None:
            return None
    return subst


def _bind(var, t, subst, fn_sorts):
    t_sort = _result_sort(t, fn_sorts)
    if t_sort is not None and t_sort != var.sort:
        return None
    if _occurs(var, t, subst):
        return None
    subst[var] = t
    return subst


def resolved_subst(subst):
    """Flatten a triangular substitution so every binding is fully applied."""
    return {v: apply_subst(v, subst) for v in subst}


# -- clausification -----------------------------------------------------------


@dataclass
class ClauseSet:
    clauses: list  # of frozensets of Literal
    dictionary: object  # private copy carrying the Skolem registrations
    skolem_registry: dict = field(default_factory=dict)
    fn_sorts: dict = field(default_factory=dict)  # fn ordinal -> result sort index


def _nnf(f, positive=True):
    if isinstance(f, Atom):
        return f if positive else Not(f)
    if isinstance(f, Not):
        return _nnf(f.body, not positive)
    if isinstance(f, Quantified):
        quantifier = f.quantifier
        if not positive:
            quantifier = (
                Quantifier.FORALL if quantifier is Quantifier.EXISTS else Quantifier.EXISTS
            )
        return Quantified(quantifier, f.var, _nnf(f.body, positive))
    op = f.connective
    if op is Connective.IFF:
        raise ParaError("expand <-> before clausification")
    if op is Connective.IMPLIES:
        left = _nnf(f.left, not positive)
        right = _nnf(f.right, positive)
        joined = Connective.OR if positive else Connective.AND
        return Binary(joined, left, right)
    if not positive:
        op = Connective.OR if op is Connective.AND else Connective.AND
    return Binary(op, _nnf(f.left, positive), _nnf(f.right, positive))


def _universal_closure(f):
    for var in sorted(free_vars(f), key=lambda v: (v.sort.index, v.index), reverse=True):
        f = Quantified(Quantifier.FORALL, var, f)
    return f


def _prenex(f, env, counter):
    """NNF formula -> (binder prefix, quantifier-free matrix)."""
    if isinstance(f, Atom):
        return [], Atom(f.pred_index, tuple(_rename_term(a, env) for a in f.args))
    if isinstance(f, Not):
        body = f.body
        return [], Not(Atom(body.pred_index, tuple(_rename_term(a, env) for a in body.args)))
    if isinstance(f, Binary):
        left_prefix, left = _prenex(f.left, env, counter)
        right_prefix, right = _prenex(f.right, env, counter)
        return left_prefix + right_prefix, Binary(f.connective, left, right)
    sort = f.var.sort
    counter[sort.index] = counter.get(sort.index, 0) + 1
    fresh = Variable(sort, counter[sort.index])
    prefix, matrix = _prenex(f.body, {**env, f.var: fresh}, counter)
    return [(f.quantifier, fresh)] + prefix, matrix


def _rename_term(t, env):
    if isinstance(t, Variable):
        return env.get(t, t)
    if isinstance(t, Constant):
        return t
    return FunctionApp(t.fn_index, tuple(_rename_term(a, env) for a in t.args))


class _Skolemizer:
    def __init__(self, clause_set):
        self.cs = clause_set
        self.counter = 0

    def fresh_symbol(self, var, universals):
        d = self.cs.dictionary
        while True:
            self.counter += 1
            name = f"sk{self.counter}"
            if universals:
                if d.function_index(name) is None:
                    d.register(FUNCTION, name, len(universals))
                    ordinal = d.function_index(name)
                    self.cs.fn_sorts[ordinal] = var.sort.index
                    self.cs.skolem_registry[("function", ordinal)] = {
                        "name": name,
                        "sort": var.sort.index,
                        "arity": len(universals),
                    }
                    return FunctionApp(ordinal, tuple(universals))
            else:
                if d.constant_in_sort(name, var.sort.index) is None:
                    d.register(constant_category(var.sort.index), name)
                    ordinal = d.constant_in_sort(name, var.sort.index)
                    self.cs.skolem_registry[("constant", var.sort.index, ordinal)] = {
                        "name": name,
                        "sort": var.sort.index,
                    }
                    return Constant(var.sort, ordinal)


def _distribute(f):
    """Quantifier-free NNF matrix -> list of literal frozensets."""
    if isinstance(f, Atom):
        return [frozenset((Literal(True, f.pred_index, f.args),))]
    if isinstance(f, Not):
        atom = f.body
        return [frozenset((Literal(False, atom.pred_index, atom.args),))]
    if f.connective is Connective.AND:
        return _distribute(f.left) + _distribute(f.right)
    left = _distribute(f.left)
    right = _distribute(f.right)
    return [a | b for a in left for b in right]


def _clausify_into(f, clause_set, counter, skolemizer):
    f = _nnf(expand_iff(_universal_closure(f)))
    prefix, matrix = _prenex(f, {}, counter)
    subst = {}
    universals = []
    for quantifier, var in prefix:
        if quantifier is Quantifier.FORALL:
            universals.append(var)
        else:
            subst[var] = skolemizer.fresh_symbol(var, list(universals))
    if subst:
        matrix = _apply_formula(matrix, subst)
    clauses = []
    for literals in _distribute(matrix):
        if not is_tautology(literals):
            clauses.append(literals)
    return clauses


def _apply_formula(f, subst):
    if isinstance(f, Atom):
        return Atom(f.pred_index, tuple(apply_subst(a, subst) for a in f.args))
    if isinstance(f, Not):
        return Not(_apply_formula(f.body, subst))
    return Binary(f.connective, _apply_formula(f.left, subst), _apply_formula(f.right, subst))


def to_cnf(f, d):
    """Clausify one formula, registering Skolem symbols in a copy of d."""
    clause_set = ClauseSet(clauses=[], dictionary=d.copy())
    skolemizer = _Skolemizer(clause_set)
    clause_set.clauses = _clausify_into(f, clause_set, {}, skolemizer)
    return clause_set


def cnf_premises(premises, d):
    """Clausify a premise list into one shared ClauseSet."""
    clause_set = ClauseSet(clauses=[], dictionary=d.copy())
    skolemizer = _Skolemizer(clause_set)
    counter = {}
    for f in premises:
        clause_set.clauses.extend(_clausify_into(f, clause_set, counter, skolemizer))
    return clause_set


def clause_formula(literals):
    """Universal closure of a clause as a plain formula (for the oracle)."""
    lits = sorted(literals, key=_literal_order)
    formula = None
    for lit in lits:
        piece = Atom(lit.pred_index, lit.args)
        if not lit.positive:
            piece = Not(piece)
        formula = piece if formula is None else Binary(Connective.OR, formula, piece)
    if formula is None:
        raise ParaError("the empty clause has no formula form")
    return _universal_closure(formula)


# -- resolution ---------------------------------------------------------------


class ProofStatus(enum.Enum):
    REFUTED = "refuted"
    PROVED = "proved"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class Step:
    id: int
    rule: str  # input | resolve | factor
    literals: frozenset
    parents: tuple = ()
    unifier: tuple = ()  # sorted ((variable, term), ...) pairs
    resolved_atom: object = None  # positive Literal the parents clashed on
    resolved_pair: tuple = ()  # the literals removed from (first, renamed second)
    source: object = None  # input premise index


@dataclass
class ProofResult:
    status: ProofStatus
    trace: list
    reason: str = ""
    clause_count: int = 0

    @property
    def refuted(self):
        return self.status is ProofStatus.REFUTED

    @property
    def proved(self):
        return self.status is ProofStatus.PROVED


@dataclass(frozen=True)
class Bounds:
    max_clauses: int = 50_000
    max_seconds: float = 5.0


def rename_apart(literals, against):
    """Rename clause variables per sort above those used in ``against``."""
    offsets = {}
    for var in clause_vars(against):
        offsets[var.sort.index] = max(offsets.get(var.sort.index, 0), var.index)
    if not offsets:
        return literals
    mapping = {}
    for var in clause_vars(literals):
        offset = offsets.get(var.sort.index, 0)
        if offset:
            mapping[var] = Variable(var.sort, var.index + offset)
    if not mapping:
        return literals
    return frozenset(apply_subst_literal(lit, mapping) for lit in literals)


class _Saturation:
    def __init__(self, clause_set, bounds):
        self.fn_sorts = clause_set.fn_sorts
        self.bounds = bounds
        self.steps = []
        self.by_id = {}
        self.seen = set()
        self.passive = []
        self.active = []
        self.empty_step = None

    def add(self, literals, rule, parents=(), unifier=(), resolved_atom=None, resolved_pair=(), source=None):
        if is_tautology(literals):
            return None
        key = clause_key(literals)
        if key in self.seen:
            return None
        self.seen.add(key)
        step = Step(
            id=len(self.steps) + 1,
            rule=rule,
            literals=frozenset(literals),
            parents=tuple(parents),
            unifier=unifier,
            resolved_atom=resolved_atom,
            resolved_pair=resolved_pair,
            source=source,
        )
        self.steps.append(step)
        self.by_id[step.id] = step
        heapq.heappush(self.passive, (len(step.literals), step.id))
        if not step.literals:
            self.empty_step = step
        return step

    def run(self):
        deadline = time.monotonic() + self.bounds.max_seconds
        if self.empty_step:
            return "refuted"
        while self.passive:
            if len(self.steps) >= self.bounds.max_clauses:
                return "clause limit reached"
            if time.monotonic() > deadline:
                return "time limit reached"
            _, given_id = heapq.heappop(self.passive)
            given = self.by_id[given_id]
            for other in list(self.active):
                for literals, unifier, atom, pair in self._resolvents(given, other):
                    self.add(
                        literals,
                        "resolve",
                        parents=(given.id, other.id),
                        unifier=unifier,
                        resolved_atom=atom,
                        resolved_pair=pair,
                    )
                    if self.empty_step:
                        return "refuted"
            for literals, unifier in self._factors(given):
                self.add(literals, "factor", parents=(given.id,), unifier=unifier)
                if self.empty_step:
                    return "refuted"
            self.active.append(given)
        return "saturated without deriving the empty clause"

    def _resolvents(self, first, second):
        renamed = rename_apart(second.literals, first.literals)
        for lit in first.literals:
            for other in renamed:
                if other.pred_index != lit.pred_index or other.positive == lit.positive:
                    continue
                subst = unify(lit.atom(), other.atom(), fn_sorts=self.fn_sorts)
                if subst is None:
                    continue
                flat = resolved_subst(subst)
                resolvent = frozenset(
                    apply_subst_literal(l, flat) for l in first.literals if l != lit
                ) | frozenset(apply_subst_literal(l, flat) for l in renamed if l != other)
                unifier = tuple(sorted(flat.items(), key=lambda kv: (kv[0].sort.index, kv[0].index)))
                yield resolvent, unifier, apply_subst_literal(lit.atom(), flat), (lit, other)

    def _factors(self, step):
        literals = sorted(step.literals, key=_literal_order)
        for a, b in itertools.combinations(literals, 2):
            if a.positive != b.positive or a.pred_index != b.pred_index:
                continue
            subst = unify(a.atom(), b.atom(), fn_sorts=self.fn_sorts)
            if subst is None:
                continue
            flat = resolved_subst(subst)
            factored = frozenset(apply_subst_literal(l, flat) for l in step.literals)
            if len(factored) < len(step.literals):
                unifier = tuple(sorted(flat.items(), key=lambda kv: (kv[0].sort.index, kv[0].index)))
                yield factored, unifier


def refute(premises, d, bounds=None):
    """Search for a contradiction among the premises."""
    bounds = bounds or Bounds()
    clause_set = cnf_premises(premises, d)
    saturation = _Saturation(clause_set, bounds)
    for index, literals in enumerate(clause_set.clauses):
        saturation.add(literals, "input", source=index)
        if saturation.empty_step:
            break
    outcome = saturation.run() if not saturation.empty_step else "refuted"
    if outcome == "refuted":
        return ProofResult(
            ProofStatus.REFUTED,
            _used_steps(saturation),
            clause_count=len(saturation.steps),
        )
    return ProofResult(ProofStatus.UNKNOWN, [], reason=outcome, clause_count=len(saturation.steps))


def prove(premises, goal, d, bounds=None):
    """Refute premises + negated goal; Proved iff that refutation succeeds."""
    result = refute(list(premises) + [Not(goal)], d, bounds)
    if result.refuted:
        return ProofResult(ProofStatus.PROVED, result.trace, clause_count=result.clause_count)
    return result


def _used_steps(saturation):
    """Steps reachable from the empty clause, ids preserved."""
    empty = saturation.empty_step
    needed = set()
    stack = [empty.id]
    while stack:
        sid = stack.pop()
        if sid in needed:
            continue
        needed.add(sid)
        stack.extend(saturation.by_id[sid].parents)
    return [saturation.by_id[sid] for sid in sorted(needed)]


# -- trace text ---------------------------------------------------------------


def term_str(t, d):
    if isinstance(t, Variable):
        try:
            return d.variable_name(t.sort.index, t.index)
        except Exception:
            return f"V{t.sort.index}_{t.index}"
    if isinstance(t, Constant):
        try:
            return d.constant_name(t.sort.index, t.index)
        except Exception:
            return f"C{t.sort.index}_{t.index}"
    name = d.function_name(t.fn_index)
    return f"{name}({', '.join(term_str(a, d) for a in t.args)})"


def literal_str(lit, d):
    sign = "" if lit.positive else "~"
    name = d.predicate_name(lit.pred_index)
    if not lit.args:
        return sign + name
    return f"{sign}{name}({', '.join(term_str(a, d) for a in lit.args)})"


def clause_str(literals, d):
    if not literals:
        return "[]"
    return "{" + ", ".join(literal_str(l, d) for l in sorted(literals, key=_literal_order)) + "}"


def format_trace(steps, d):
    """One line per step: resolvent <- rule, parent ids, unifier."""
    lines = []
    for step in steps:
        clause = clause_str(step.literals, d)
        if step.rule == "input":
            lines.append(f"[{step.id}] {clause} <- input {step.source + 1}")
            continue
        binds = ", ".join(f"{term_str(v, d)} -> {term_str(t, d)}" for v, t in step.unifier)
        parents = " ".join(str(p) for p in step.parents)
        on = f" on {literal_str(step.resolved_atom, d)}" if step.resolved_atom else ""
        lines.append(f"[{step.id}] {clause} <- {step.rule} {parents} {{{binds}}}{on}")
    return "\n".join(lines)


# -- finite models -------------------------------------------------------------


@dataclass
class Model:
    domain_size: int
    constants: dict  # (sort, ordinal) -> element number
    atoms: dict  # (pred, elements tuple) -> bool


def _collect_symbols(f, preds, consts):
    if isinstance(f, Atom):
        arity = len(f.args)
        known = preds.setdefault(f.pred_index, arity)
        if known != arity:
            raise ParaError(f"predicate {f.pred_index} used with arities {known} and {arity}")
        for a in f.args:
            _collect_term(a, consts)
    elif isinstance(f, Not):
        _collect_symbols(f.body, preds, consts)
    elif isinstance(f, Binary):
        _collect_symbols(f.left, preds, consts)
        _collect_symbols(f.right, preds, consts)
    else:
        _collect_symbols(f.body, preds, consts)


def _collect_term(t, consts):
    if isinstance(t, Constant):
        consts.add((t.sort.index, t.index))
    elif isinstance(t, FunctionApp):
        raise ParaError("the finite-model oracle handles function-free sentences only")


def _ground(f, env, const_values, n):
    """Formula -> ground tree of ('atom', key) / ('not', x) / ('and'|'or', parts)."""
    if isinstance(f, Atom):
        elements = []
        for a in f.args:
            if isinstance(a, Variable):
                elements.append(env[a])
            else:
                elements.append((a.sort.index, const_values[(a.sort.index, a.index)]))
        return ("atom", (f.pred_index, tuple(elements)))
    if isinstance(f, Not):
        return ("not", _ground(f.body, env, const_values, n))
    if isinstance(f, Binary):
        left = _ground(f.left, env, const_values, n)
        right = _ground(f.right, env, const_values, n)
        if f.connective is Connective.AND:
            return ("and", [left, right])
        if f.connective is Connective.OR:
            return ("or", [left, right])
        if f.connective is Connective.IMPLIES:
            return ("or", [("not", left), right])
        return (
            "and",
            [("or", [("not", left), right]), ("or", [("not", right), left])],
        )
    parts = []
    for value in range(n):
        element = (f.var.sort.index, value)
        parts.append(_ground(f.body, {**env, f.var: element}, const_values, n))
    return ("and" if f.quantifier is Quantifier.FORALL else "or", parts)


def _eval3(node, assignment):
    kind = node[0]
    if kind == "atom":
        return assignment.get(node[1])
    if kind == "not":
        inner = _eval3(node[1], assignment)
        return None if inner is None else not inner
    undecided = False
    if kind == "and":
        for part in node[1]:
            value = _eval3(part, assignment)
            if value is False:
                return False
            if value is None:
                undecided = True
        return None if undecided else True
    for part in node[1]:
        value = _eval3(part, assignment)
        if value is True:
            return True
        if value is None:
            undecided = True
    return None if undecided else False


def _first_unassigned(node, assignment):
    kind = node[0]
    if kind == "atom":
        return None if node[1] in assignment else node[1]
    if kind == "not":
        return _first_unassigned(node[1], assignment)
    for part in node[1]:
        if _eval3(part, assignment) is None:
            found = _first_unassigned(part, assignment)
            if found is not None:
                return found
    return None


def _search(tree, assignment):
    value = _eval3(tree, assignment)
    if value is not None:
        return assignment if value else None
    atom = _first_unassigned(tree, assignment)
    for choice in (True, False):
        result = _search(tree, {**assignment, atom: choice})
        if result is not None:
            return result
    return None


def finite_model_check(sentences, max_domain=3):
    """First model over domains of size 1..max_domain, or None.

    Function-free sentences only (Skolem constants are fine); every sort
    gets its own domain of the probed size.
    """
    preds = {}
    consts = set()
    closed = [_universal_closure(expand_iff(f)) for f in sentences]
    for f in closed:
        _collect_symbols(f, preds, consts)
    const_list = sorted(consts)
    for n in range(1, max_domain + 1):
        for values in itertools.product(range(n), repeat=len(const_list)):
            const_values = dict(zip(const_list, values))
            tree = ("and", [_ground(f, {}, const_values, n) for f in closed])
            assignment = _search(tree, {})
            if assignment is not None:
                return Model(domain_size=n, constants=const_values, atoms=dict(assignment))
    return None

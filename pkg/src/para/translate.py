"""Prolog clause export and Lean-style theorem skeleton export.

Prolog takes Horn sentences only; name mangling is deterministic and
injective, and the applied mapping is recorded in a header comment.

The Lean emitter produces statement text, never executed proofs.  Unary
"guard" predicates are absorbed into binder types: ``forall x (Man(x) ->
phi)`` becomes ``∀ x : Man, phi`` and a ground fact ``Man(socrates)``
becomes the parameter ``(socrates : Man)``, which is what gives the
familiar ``theorem MortalSocrates (socrates : Man) (h : (∀ x : Man,
mortal x)) : (mortal socrates)`` shape.  Remaining predicates are declared
as proposition-valued functions over the absorbed types.
"""

import re

from .errors import TranslateError
from .fol import (
    Atom,
    Binary,
    Connective,
    Constant,
    FunctionApp,
    Not,
    Quantified,
    Quantifier,
    Variable,
    expand_iff,
)

# -- shared name mangling --------------------------------------------------


def _mangle(name, used, style):
    base = re.sub(r"[^A-Za-z0-9_]", "_", name)
    if not base or not (base[0].isalpha() or base[0] == "_"):
        base = "x" + base
    if style == "lower":
        base = base[0].lower() + base[1:]
    elif style == "upper":
        base = base[0].upper() + base[1:]
    candidate = base
    n = 1
    while candidate in used:
        n += 1
        candidate = f"{base}_{n}"
    used.add(candidate)
    return candidate


# -- prolog ---------------------------------------------------------------


class _PrologNames:
    """Deterministic atom/variable names for one dictionary."""

    def __init__(self, d):
        self.d = d
        used = set()
        self.predicates = {i: _mangle(n, used, "lower") for i, n, _ in d.iter_predicates()}
        self.functions = {i: _mangle(n, used, "lower") for i, n, _ in d.iter_functions()}
        self.constants = {
            (t, i): _mangle(n, used, "lower") for t, i, n in d.iter_constants()
        }
        var_used = set()
        self.variables = {
            (t, i): _mangle(n, var_used, "upper") for t, i, n in d.iter_variables()
        }

    def header(self):
        lines = ["% symbol mapping"]
        for i, name, _ in self.d.iter_predicates():
            lines.append(f"%   predicate {name} -> {self.predicates[i]}")
        for i, name, _ in self.d.iter_functions():
            lines.append(f"%   function {name} -> {self.functions[i]}")
        for t, i, name in self.d.iter_constants():
            lines.append(f"%   constant {name} -> {self.constants[(t, i)]}")
        for t, i, name in self.d.iter_variables():
            lines.append(f"%   variable {name} -> {self.variables[(t, i)]}")
        return lines


def _prolog_term(t, names):
    if isinstance(t, Variable):
        return names.variables[(t.sort.index, t.index)]
    if isinstance(t, Constant):
        return names.constants[(t.sort.index, t.index)]
    args = ", ".join(_prolog_term(a, names) for a in t.args)
    functor = names.functions[t.fn_index]
    return f"{functor}({args})" if args else functor


def _prolog_atom(atom, names):
    functor = names.predicates[atom.pred_index]
    if not atom.args:
        return functor
    return f"{functor}({', '.join(_prolog_term(a, names) for a in atom.args)})"


def _strip_foralls(f):
    while isinstance(f, Quantified):
        if f.quantifier is Quantifier.EXISTS:
            raise TranslateError("existential quantifiers have no Horn clause form")
        f = f.body
    return f


def _conjunct_atoms(f):
    if isinstance(f, Atom):
        return [f]
    if isinstance(f, Binary) and f.connective is Connective.AND:
        return _conjunct_atoms(f.left) + _conjunct_atoms(f.right)
    raise TranslateError(f"rule bodies must be conjunctions of atoms, found {_describe(f)}")


def _describe(f):
    if isinstance(f, Binary):
        return f"connective {f.connective.value!r}"
    if isinstance(f, Not):
        return "negation"
    if isinstance(f, Quantified):
        return f"quantifier {f.quantifier.value!r}"
    return "an atom in an unexpected position"


def to_prolog(sentences, d):
    """Horn sentences -> Prolog clause text (facts and rules)."""
    names = _PrologNames(d)
    clauses = []
    for sentence in sentences:
        matrix = _strip_foralls(expand_iff(sentence))
        if isinstance(matrix, Atom):
            clauses.append(f"{_prolog_atom(matrix, names)}.")
            continue
        if isinstance(matrix, Binary) and matrix.connective is Connective.IMPLIES:
            head = matrix.right
            if not isinstance(head, Atom):
                raise TranslateError(f"a rule head must be a single atom, found {_describe(head)}")
            body = ", ".join(_prolog_atom(a, names) for a in _conjunct_atoms(matrix.left))
            clauses.append(f"{_prolog_atom(head, names)} :- {body}.")
            continue
        raise TranslateError(f"not a Horn sentence: top-level {_describe(matrix)}")
    return "\n".join(names.header() + clauses) + "\n"


# -- lean skeletons --------------------------------------------------------

_LEAN_OPS = {
    Connective.AND: "∧",
    Connective.OR: "∨",
    Connective.IMPLIES: "→",
    Connective.IFF: "↔",
}


class _LeanNames:
    def __init__(self, d):
        self.d = d
        used = {"false", "Type", "Prop", "theorem", "variables", "begin", "end", "sorry"}
        self.types_by_pred = {}  # predicate ordinal -> type name (guards)
        self.types_by_sort = {}  # sort ordinal -> type name
        self.predicates = {i: _mangle(n, used, "lower") for i, n, _ in d.iter_predicates()}
        self.functions = {i: _mangle(n, used, "lower") for i, n, _ in d.iter_functions()}
        self.constants = {(t, i): _mangle(n, used, "lower") for t, i, n in d.iter_constants()}
        self.variables = {(t, i): _mangle(n, used, "keep") for t, i, n in d.iter_variables()}
        self._used = used

    def type_for_pred(self, ordinal):
        if ordinal not in self.types_by_pred:
            name = self.d.predicate_name(ordinal)
            self.types_by_pred[ordinal] = _mangle(name, self._used, "upper")
        return self.types_by_pred[ordinal]

    def type_for_sort(self, ordinal):
        if ordinal not in self.types_by_sort:
            name = self.d.sort_name(ordinal)
            self.types_by_sort[ordinal] = _mangle(name, self._used, "upper")
        return self.types_by_sort[ordinal]


class _LeanEmitter:
    def __init__(self, d):
        self.d = d
        self.names = _LeanNames(d)
        self.const_types = {}  # (sort, ordinal) -> type name
        self.const_order = []
        self.pred_positions = {}  # ordinal -> [type name or None per position]
        self.fn_positions = {}  # ordinal -> ([arg types], result type or None)
        self.used_preds = []  # ordinals of predicates used outside guards
        self.type_order = []

    # guard detection ----------------------------------------------------

    @staticmethod
    def _guard(f):
        """(guard predicate ordinal, inner body) for a relativizable binder."""
        wanted = Connective.IMPLIES if f.quantifier is Quantifier.FORALL else Connective.AND
        body = f.body
        if (
            isinstance(body, Binary)
            and body.connective is wanted
            and isinstance(body.left, Atom)
            and len(body.left.args) == 1
            and body.left.args[0] == f.var
        ):
            return body.left.pred_index, body.right
        return None

    def _note_type(self, name):
        if name not in self.type_order:
            self.type_order.append(name)

    # formula translation --------------------------------------------------

    def formula(self, f, env):
        if isinstance(f, Quantified):
            guard = self._guard(f)
            if guard is not None:
                pred, body = guard
                type_name = self.names.type_for_pred(pred)
            else:
                body = f.body
                type_name = self.names.type_for_sort(f.var.sort.index)
            self._note_type(type_name)
            symbol = "∀" if f.quantifier is Quantifier.FORALL else "∃"
            var_name = self.names.variables[(f.var.sort.index, f.var.index)]
            inner = self.formula(body, {**env, f.var: type_name})
            return f"{symbol} {var_name} : {type_name}, {inner}"
        if isinstance(f, Not):
            return "¬ " + self._operand(f.body, env)
        if isinstance(f, Binary):
            left = self._operand(f.left, env)
            right = self._operand(f.right, env)
            return f"{left} {_LEAN_OPS[f.connective]} {right}"
        return self.atom(f, env)

    def _operand(self, f, env):
        text = self.formula(f, env)
        return f"({text})" if isinstance(f, (Binary, Quantified)) else text

    def atom(self, f, env):
        if f.pred_index not in self.used_preds:
            self.used_preds.append(f.pred_index)
        positions = self.pred_positions.setdefault(f.pred_index, [None] * len(f.args))
        words = [self.names.predicates[f.pred_index]]
        for i, arg in enumerate(f.args):
            text, type_name = self.term(arg, env)
            if positions[i] is None and type_name is not None:
                positions[i] = type_name
            words.append(text)
        return " ".join(words)

    def term(self, t, env):
        """(rendered text, inferred type name or None)."""
        if isinstance(t, Variable):
            name = self.names.variables[(t.sort.index, t.index)]
            return name, env.get(t) or self._sort_type(t.sort.index)
        if isinstance(t, Constant):
            key = (t.sort.index, t.index)
            type_name = self.const_types.get(key) or self._sort_type(t.sort.index)
            self.const_types.setdefault(key, type_name)
            if key not in self.const_order:
                self.const_order.append(key)
            return self.names.constants[key], type_name
        arg_types = []
        words = [self.names.functions[t.fn_index]]
        for arg in t.args:
            text, type_name = self.term(arg, env)
            arg_types.append(type_name)
            words.append(f"({text})" if isinstance(arg, FunctionApp) else text)
        known = self.fn_positions.setdefault(t.fn_index, (arg_types, None))
        merged = [a or b for a, b in zip(known[0], arg_types)]
        self.fn_positions[t.fn_index] = (merged, known[1])
        return " ".join(words), None

    def _sort_type(self, sort_index):
        name = self.names.type_for_sort(sort_index)
        self._note_type(name)
        return name


def _derive_theorem_name(goal, d, emitter):
    if goal is None:
        return "Inconsistent"
    if isinstance(goal, Atom):
        parts = [d.predicate_name(goal.pred_index)]
        for arg in goal.args:
            if isinstance(arg, Constant):
                parts.append(d.constant_name(arg.sort.index, arg.index))
        name = "".join(p[0].upper() + p[1:] for p in parts if p)
        if re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", name):
            return name
    return "Claim"


def to_lean_skeleton(premises, goal, d, theorem_name=None):
    """Premises and a goal (None for falsum) -> Lean theorem statement text."""
    emitter = _LeanEmitter(d)

    remaining = []
    for premise in premises:
        if (
            isinstance(premise, Atom)
            and len(premise.args) == 1
            and isinstance(premise.args[0], Constant)
        ):
            const = premise.args[0]
            key = (const.sort.index, const.index)
            if key not in emitter.const_types:
                type_name = emitter.names.type_for_pred(premise.pred_index)
                emitter._note_type(type_name)
                emitter.const_types[key] = type_name
                emitter.const_order.append(key)
                continue
        remaining.append(premise)

    hypothesis_texts = [emitter.formula(p, {}) for p in remaining]
    goal_text = "false" if goal is None else emitter.formula(goal, {})

    name = theorem_name or _derive_theorem_name(goal, d, emitter)

    arrow = " → "
    declarations = [f"({t} : Type)" for t in emitter.type_order]
    for ordinal in emitter.used_preds:
        positions = [p or "Type" for p in emitter.pred_positions[ordinal]]
        signature = arrow.join(positions + ["Prop"])
        declarations.append(f"({emitter.names.predicates[ordinal]} : {signature})")
    for ordinal, (arg_types, result) in emitter.fn_positions.items():
        parts = [p or "Type" for p in arg_types] + [result or arg_types[0] or "Type"]
        declarations.append(f"({emitter.names.functions[ordinal]} : {arrow.join(parts)})")

    params = []
    for key in emitter.const_order:
        params.append(f"({emitter.names.constants[key]} : {emitter.const_types[key]})")
    if len(hypothesis_texts) == 1:
        params.append(f"(h : ({hypothesis_texts[0]}))")
    else:
        for i, text in enumerate(hypothesis_texts, start=1):
            params.append(f"(h{i} : ({text}))")

    lines = []
    if declarations:
        lines.append("variables " + " ".join(declarations))
        lines.append("")
    signature = f"theorem {name}"
    if params:
        signature += " " + " ".join(params)
    target = goal_text if goal is None else f"({goal_text})"
    lines.append(f"{signature} : {target} :=")
    lines.append("begin")
    lines.append("  sorry")
    lines.append("end")
    return "\n".join(lines) + "\n"

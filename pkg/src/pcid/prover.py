"""Automatic proof search built on the constructive completeness argument.

The prover decomposes the goal with a reduction tree until only atoms and
definitions remain, then closes every leaf by case analysis over the open
atoms of its definitions.  Each case is discharged by proofs synthesized
from a well-founded induction:

* :func:`prove_from_trace` turns a terminal induction into a proof of
  ``D, Γ ⟶ L`` for every defined literal ``L`` the induction makes true.
* :func:`prove_unsat_leaf` proves ``D, Γ ⟶`` with the non-total rule when the
  well-founded model over ``Γ`` is three-valued.
* :func:`prove_leaf` assembles the case analysis for leaves with any number
  of definitions.

Everything is deterministic: formulas are reduced in order of their printed
form and case splits follow the sorted order of atoms, false before true.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Optional

from .calculus import (
    ProofTree,
    RuleParams,
    check_proof,
    derive,
    nontotal_parts,
    renaming_level,
)
from .errors import ContractError, ResourceLimitError
from .semantics import (
    MAX_ENUM_ATOMS,
    F,
    Interpretation,
    T,
    U,
    find_counter_model,
    is_total,
    wf_model,
    wf_trace,
)
from .syntax import (
    BOT,
    TOP,
    And,
    Atom,
    Definition,
    Formula,
    Not,
    Or,
    Sequent,
    complement,
    conjoin,
    definition_occurrences,
    is_literal,
    literal_atom,
)
from .textio import format_formula, sorted_formulas

MAX_PROVER_ATOMS = 16
MAX_EXTENSIONS = 1 << 16


# ---------------------------------------------------------------------------
# small proof combinators


def _node(rule: str, params: dict, gamma, delta, premises: Iterable[ProofTree]) -> ProofTree:
    """Apply ``rule`` forward and check the supplied subproofs prove its premises."""
    p = RuleParams.create(rule, params)
    conclusion, expected = derive(rule, p, gamma, delta)
    premises = tuple(premises)
    got = tuple(t.sequent for t in premises)
    if got != expected:
        raise AssertionError(f"internal: {rule} premises {list(map(str, got))} != {list(map(str, expected))}")
    return ProofTree(rule, conclusion, p, premises)


def axiom(s: Sequent) -> ProofTree | None:
    """An axiom proof of ``s`` if it is an instance of an axiom."""
    if BOT in s.antecedent:
        return ProofTree("axiom-bot", s)
    if TOP in s.succedent:
        return ProofTree("axiom-top", s)
    shared = s.antecedent & s.succedent
    if shared:
        f = min(shared, key=format_formula)
        return ProofTree("axiom-id", s, RuleParams(formula=f))
    return None


def weaken(proof: ProofTree, goal: Sequent) -> ProofTree:
    """Extend the sides of ``proof`` to those of ``goal`` by weakening."""
    have = proof.sequent
    if have == goal:
        return proof
    if not (have.antecedent <= goal.antecedent and have.succedent <= goal.succedent):
        raise AssertionError(f"internal: cannot weaken {have} to {goal}")
    direct = axiom(goal)
    if direct is not None:
        return direct
    ant, suc = set(have.antecedent), set(have.succedent)
    for f in sorted_formulas(goal.antecedent - have.antecedent):
        proof = _node("weaken-l", {"formula": f}, ant, suc, [proof])
        ant.add(f)
    for f in sorted_formulas(goal.succedent - have.succedent):
        proof = _node("weaken-r", {"formula": f}, ant, suc, [proof])
        suc.add(f)
    return proof


def cut(goal: Sequent, a: Formula, with_a_right: ProofTree, with_a_left: ProofTree) -> ProofTree:
    """``Γ ⟶ Δ`` from ``Γ ⟶ Δ, a`` and ``a, Γ ⟶ Δ``."""
    return _node("cut", {"cutformula": a}, goal.antecedent, goal.succedent, [with_a_right, with_a_left])


def contradiction(gamma: frozenset, a: Atom, pos: ProofTree, neg: ProofTree) -> ProofTree:
    """``Γ ⟶`` from proofs of ``Γ ⟶ a`` and ``Γ ⟶ ~a``."""
    na = Not(a)
    left = _node("not-l", {"formula": na}, gamma, (), [pos])
    return cut(Sequent(gamma, ()), na, neg, left)


def move_to_succedent(proof: ProofTree, a: Atom) -> ProofTree:
    """From ``~a, Γ ⟶ Δ`` derive ``Γ ⟶ Δ, a``."""
    s = proof.sequent
    na = Not(a)
    gamma = s.antecedent - {na}
    delta = s.succedent | {a}
    goal = Sequent(gamma, delta)
    right = _node("not-r", {"formula": na}, gamma, delta, [axiom(Sequent(gamma | {a}, delta))])
    left = weaken(proof, Sequent(gamma | {na}, delta))
    return cut(goal, na, right, left)


# ---------------------------------------------------------------------------
# reduction trees


@dataclass(frozen=True)
class ReductionNode:
    sequent: Sequent
    rule: Optional[str] = None  # the logical rule or "def-intro"; None at leaves
    formula: Optional[Formula] = None
    children: tuple = ()

    @property
    def is_leaf(self) -> bool:
        return self.rule is None

    def leaves(self) -> list[Sequent]:
        out, stack = [], [self]
        while stack:
            n = stack.pop()
            if n.is_leaf:
                out.append(n.sequent)
            else:
                stack.extend(reversed(n.children))
        return out


_LEFT = {Not: "not-l", And: "and-l", Or: "or-l"}
_RIGHT = {Not: "not-r", And: "and-r", Or: "or-r"}


def next_reduction(s: Sequent, allow_intro: bool = True) -> tuple[str, Formula] | None:
    """The reduction applied to ``s``: least formula, antecedent first, def-intro last."""
    if axiom(s) is not None:
        return None
    left = [f for f in s.antecedent if type(f) in _LEFT]
    if left:
        f = min(left, key=format_formula)
        return _LEFT[type(f)], f
    right = [f for f in s.succedent if type(f) in _RIGHT]
    if right:
        f = min(right, key=format_formula)
        return _RIGHT[type(f)], f
    if allow_intro:
        defs = [f for f in s.succedent if isinstance(f, Definition)]
        if defs:
            return "def-intro", min(defs, key=format_formula)
    return None


def build_reduction_tree(s: Sequent, allow_intro: bool = True) -> ReductionNode:
    """Reduce ``s`` until every leaf is an axiom or irreducible."""
    step = next_reduction(s, allow_intro)
    if step is None:
        return ReductionNode(s)
    rule, f = step
    _, premises = derive(rule, RuleParams.create(rule, {"formula": f}), *_split(s, rule, f))
    return ReductionNode(s, rule, f, tuple(build_reduction_tree(p, allow_intro) for p in premises))


def _split(s: Sequent, rule: str, f: Formula) -> tuple[frozenset, frozenset]:
    """Side context of a reduction step: the sequent minus its principal formula."""
    if rule.endswith("-l"):
        return s.antecedent - {f}, s.succedent
    return s.antecedent, s.succedent - {f}


def _assemble(tree: ReductionNode, close_leaf) -> ProofTree:
    if tree.is_leaf:
        return axiom(tree.sequent) or close_leaf(tree.sequent)
    s, rule, f = tree.sequent, tree.rule, tree.formula
    subproofs = [_assemble(c, close_leaf) for c in tree.children]
    return _node(rule, {"formula": f}, *_split(s, rule, f), subproofs)


@lru_cache(maxsize=1 << 14)
def prove_pc(s: Sequent) -> ProofTree:
    """Proof of a valid propositional sequent by the reduction tree alone."""
    def fail(leaf: Sequent) -> ProofTree:
        raise ContractError(f"propositional sequent is not valid; open leaf {leaf}")

    return _assemble(build_reduction_tree(s, allow_intro=False), fail)


# ---------------------------------------------------------------------------
# single definition, complete open context


def _open_interpretation(d: Definition, gamma: Iterable[Formula]) -> dict[Atom, object]:
    values = {}
    for lit in gamma:
        if not is_literal(lit):
            raise ContractError(f"{lit} is not a literal")
        a = literal_atom(lit)
        if a not in d.open:
            raise ContractError(f"{lit} is not an open literal of the definition")
        values[a] = T if isinstance(lit, Atom) else F
    missing = d.open - set(values)
    if missing:
        raise ContractError("context leaves open atoms undecided: "
                            + ", ".join(sorted(a.name for a in missing)))
    return values


def _literal(a: Atom, value) -> Formula:
    return a if value is T else Not(a)


@lru_cache(maxsize=1 << 14)
def _trace_steps(d: Definition, gamma: frozenset):
    trace = wf_trace(d, _open_interpretation(d, gamma))
    steps = []
    known: frozenset = frozenset()
    for step in trace.steps:
        if step.kind == "derive-true":
            lits = sorted(step.atoms)
        else:
            lits = [Not(p) for p in sorted(step.atoms)]
        steps.append((known, step.kind, frozenset(step.atoms), lits))
        known = known | frozenset(lits)
    return tuple(steps), trace.limit


@lru_cache(maxsize=1 << 14)
def _step_proof(d: Definition, gamma: frozenset, known: frozenset, kind: str,
                atoms: frozenset, lit: Formula) -> ProofTree:
    """``known, D, Γ ⟶ lit`` for a literal derived by one induction step."""
    ctx = gamma | known
    if kind == "derive-true":
        premise = prove_pc(Sequent(ctx, {d.body(lit)}))
        return _node("def-r", {"formula": d, "atom": lit}, ctx, (), [premise])
    p = lit.body
    params = {"formula": d, "atom": p, "uset": atoms}
    _, premises = derive("def-l", RuleParams.create("def-l", params), ctx, ())
    inner = _node("def-l", params, ctx, (), [prove_pc(s) for s in premises])
    return _node("not-r", {"formula": lit}, ctx | {d}, (), [inner])


@lru_cache(maxsize=1 << 14)
def _prove_from_trace(d: Definition, gamma: frozenset, target: Formula) -> ProofTree:
    steps, limit = _trace_steps(d, gamma)
    a = literal_atom(target)
    want = T if isinstance(target, Atom) else F
    if a not in d.defined or limit[a] is not want:
        raise ContractError(f"{target} is not true in the well-founded model")
    base = gamma | {d}
    chain: list[tuple[frozenset, Formula, ProofTree]] = []
    for known, kind, atoms, lits in steps:
        done = False
        for lit in lits:
            chain.append((known, lit, _step_proof(d, gamma, known, kind, atoms, lit)))
            if lit == target:
                done = True
                break
        if done:
            break
    # Fold the chain from the last step back: each cut adds one derived literal.
    acc: list[Formula] = []
    prefixes = []
    for _, lit, _ in chain:
        prefixes.append(frozenset(acc))
        acc.append(lit)
    proof = None
    for (known, lit, step), before in zip(reversed(chain), reversed(prefixes)):
        goal = Sequent(base | before, {target})
        if lit == target:
            proof = weaken(step, goal)
            continue
        derived = weaken(step, Sequent(goal.antecedent, {target, lit}))
        proof = cut(goal, lit, derived, proof)
    return proof


def prove_from_trace(d: Definition, gamma: Iterable[Formula], literal: Formula) -> ProofTree:
    """Proof of ``D, Γ ⟶ L`` for a defined literal true in the well-founded model.

    ``Γ`` must contain exactly one literal for each open atom of ``D``.
    """
    gamma = frozenset(gamma)
    _open_interpretation(d, gamma)
    if not is_literal(literal):
        raise ContractError(f"{literal} is not a literal")
    return _prove_from_trace(d, gamma, literal)


@lru_cache(maxsize=1 << 12)
def _prove_unsat(d: Definition, gamma: frozenset) -> ProofTree:
    model = wf_model(d, _open_interpretation(d, gamma))
    if model.is_two_valued():
        raise ContractError("the well-founded model is two-valued; the context is satisfiable")
    decided = sorted(p for p in d.defined if model[p] is not U)
    vset = frozenset(p for p in d.defined if model[p] is U)
    k = [_literal(p, model[p]) for p in decided]
    ctx = gamma | set(k)
    params = {"formula": d, "vset": vset}
    rp = RuleParams.create("def-nontotal", params)
    conclusion, premises = derive("def-nontotal", rp, ctx, ())
    level = renaming_level("def-nontotal", rp, conclusion)
    ddia, vpos, vneg = nontotal_parts(d, vset, level)
    sub = []
    for premise, conjuncts in ((premises[0], [Not(a) for a in vpos]), (premises[1], vpos)):
        side = premise.antecedent - {ddia}
        inner_ctx = frozenset(f for f in side if literal_atom(f) in ddia.open)
        sub.append(_conjunction_proof(ddia, inner_ctx, premise, conjuncts))
    proof = _node("def-nontotal", params, ctx, (), sub)
    # Remove the decided literals one at a time, last first.
    for i in range(len(k) - 1, -1, -1):
        lit = k[i]
        goal = Sequent(gamma | {d} | set(k[:i]), ())
        derived = weaken(_prove_from_trace(d, gamma, lit), Sequent(goal.antecedent, {lit}))
        proof = cut(goal, lit, derived, proof)
    return proof


def _conjunction_proof(ddia: Definition, inner_ctx: frozenset, goal: Sequent,
                       conjuncts: list[Formula]) -> ProofTree:
    """Prove ``goal`` whose succedent is the left-nested conjunction of ``conjuncts``."""
    target = conjoin(conjuncts)
    gamma = goal.antecedent

    def build(f: Formula, items: list[Formula]) -> ProofTree:
        if len(items) == 1:
            lit = items[0]
            return weaken(_prove_from_trace(ddia, inner_ctx, lit), Sequent(gamma, {lit}))
        left = build(f.left, items[:-1])
        right = build(f.right, items[-1:])
        return _node("and-r", {"formula": f}, gamma, (), [left, right])

    return build(target, conjuncts)


def prove_unsat_leaf(d: Definition, gamma: Iterable[Formula]) -> ProofTree:
    """Proof of ``D, Γ ⟶`` when the well-founded model over ``Γ`` is not two-valued."""
    gamma = frozenset(gamma)
    _open_interpretation(d, gamma)
    return _prove_unsat(d, gamma)


# ---------------------------------------------------------------------------
# leaves with several definitions


def _restrict(literals: frozenset, atoms: frozenset) -> frozenset:
    return frozenset(l for l in literals if literal_atom(l) in atoms)


def _close(defs: tuple[Definition, ...], lits: frozenset) -> ProofTree | None:
    """Try to prove ``defs, lits ⟶`` using only definitions whose open atoms ``lits`` decides."""
    decided_atoms = {literal_atom(l) for l in lits}
    goal = Sequent(set(defs) | lits, ())
    ready = []
    for d in defs:
        if d.open <= decided_atoms:
            ctx = _restrict(lits, d.open)
            model = wf_model(d, _open_interpretation(d, ctx))
            if not model.is_two_valued():
                return weaken(_prove_unsat(d, ctx), goal)
            ready.append((d, ctx, model))
    # A literal of the context contradicts a definition's model.
    for d, ctx, model in ready:
        for lit in sorted_formulas(lits):
            a = literal_atom(lit)
            if a in d.defined and (model[a] is T) != isinstance(lit, Atom):
                true_lit = complement(lit)
                derived = weaken(_prove_from_trace(d, ctx, true_lit), Sequent(goal.antecedent, {true_lit}))
                have = axiom(Sequent(goal.antecedent, {lit}))
                pos, neg = (derived, have) if isinstance(true_lit, Atom) else (have, derived)
                return contradiction(goal.antecedent, a, pos, neg)
    # Two definitions disagree on an atom they both define.
    for i, (d1, c1, m1) in enumerate(ready):
        for d2, c2, m2 in ready[i + 1:]:
            for a in sorted(d1.defined & d2.defined):
                if m1[a] is not m2[a]:
                    (dp, cp), (dn, cn) = ((d1, c1), (d2, c2)) if m1[a] is T else ((d2, c2), (d1, c1))
                    pos = weaken(_prove_from_trace(dp, cp, a), Sequent(goal.antecedent, {a}))
                    neg = weaken(_prove_from_trace(dn, cn, Not(a)), Sequent(goal.antecedent, {Not(a)}))
                    return contradiction(goal.antecedent, a, pos, neg)
    return None


def _refute(defs: tuple[Definition, ...], lits: frozenset, free: tuple[Atom, ...]) -> ProofTree:
    closed = _close(defs, lits)
    if closed is not None:
        return closed
    if not free:
        raise ContractError("leaf is not valid: the literals extend to a model of its definitions")
    a, rest = free[0], free[1:]
    when_false = _refute(defs, lits | {Not(a)}, rest)
    when_true = _refute(defs, lits | {a}, rest)
    goal = Sequent(set(defs) | lits, ())
    neg = _node("not-r", {"formula": Not(a)}, goal.antecedent, (), [when_true])
    return cut(goal, Not(a), neg, when_false)


def refute_literals(defs: Iterable[Definition], literals: Iterable[Formula],
                    max_extensions: int = MAX_EXTENSIONS) -> ProofTree:
    """Proof of ``D₁, …, Dₙ, Γ ⟶`` for a consistent literal set ``Γ`` (caller ensures validity)."""
    defs = tuple(sorted(set(defs), key=format_formula))
    lits = frozenset(literals)
    decided = {literal_atom(l) for l in lits}
    opens = set()
    for d in defs:
        opens |= d.open
    free = tuple(sorted(opens - decided))
    if len(free) > 62 or (1 << len(free)) > max_extensions:
        raise ResourceLimitError(f"{len(free)} undecided open atoms exceed the extension bound")
    return _refute(defs, lits, free)


def prove_leaf(leaf: Sequent, max_extensions: int = MAX_EXTENSIONS) -> ProofTree:
    """Proof of a valid leaf ``D₁, …, Dₙ, atoms ⟶ atoms``."""
    direct = axiom(leaf)
    if direct is not None:
        return direct
    ant = leaf.antecedent - {TOP}
    suc = leaf.succedent - {BOT}
    defs = [f for f in ant if isinstance(f, Definition)]
    pos = [f for f in ant if not isinstance(f, Definition)]
    if not all(isinstance(f, Atom) for f in pos) or not all(isinstance(f, Atom) for f in suc):
        raise ContractError(f"not a leaf sequent: {leaf}")
    negs = [Not(a) for a in sorted(suc)]
    proof = refute_literals(defs, set(pos) | set(negs), max_extensions)
    for a in sorted(suc, reverse=True):
        proof = move_to_succedent(proof, a)
    return weaken(proof, leaf)


# ---------------------------------------------------------------------------
# top level


@dataclass(frozen=True)
class ProveOutcome:
    status: str  # "proved", "counter-model", "out-of-scope", "resource-limit"
    proof: Optional[ProofTree] = None
    counter_model: Optional[Interpretation] = None
    reason: str = ""

    @property
    def proved(self) -> bool:
        return self.status == "proved"


def scope_violations(s: Sequent, max_atoms: int = MAX_ENUM_ATOMS) -> list[Definition]:
    """Definitions occurring negatively on the left or positively on the right that are not total."""
    need = []
    for side, want_positive in ((s.antecedent, False), (s.succedent, True)):
        for f in side:
            for d, positive in definition_occurrences(f):
                if positive == want_positive and d not in need:
                    need.append(d)
    return [d for d in sorted(need, key=format_formula) if not is_total(d, (), max_atoms)]


def prove(
    s: Sequent,
    max_atoms: int = MAX_PROVER_ATOMS,
    max_extensions: int = MAX_EXTENSIONS,
) -> ProveOutcome:
    """Prove ``s``, or return a counter-model, or explain why it is outside the complete fragment."""
    if len(s.atoms) > max_atoms:
        return ProveOutcome("resource-limit", reason=f"{len(s.atoms)} atoms exceed the bound of {max_atoms}")
    try:
        bad = scope_violations(s, max(max_atoms, MAX_ENUM_ATOMS))
        if bad:
            return ProveOutcome(
                "out-of-scope",
                reason="definition not total but occurs where totality is required: "
                + ", ".join(format_formula(d) for d in bad),
            )
        counter = find_counter_model(s, max(max_atoms, MAX_ENUM_ATOMS))
        if counter is not None:
            return ProveOutcome("counter-model", counter_model=counter)
        tree = build_reduction_tree(s)
        proof = _assemble(tree, lambda leaf: prove_leaf(leaf, max_extensions))
    except ResourceLimitError as exc:
        return ProveOutcome("resource-limit", reason=str(exc))
    report = check_proof(proof)
    if not report.accepted:
        raise AssertionError("internal: generated proof rejected: " + "; ".join(report.errors))
    return ProveOutcome("proved", proof=proof)

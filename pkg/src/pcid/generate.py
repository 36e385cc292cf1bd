"""Seeded random instances: formulas, definitions, sequents, theories, proofs.

Every generator takes a :class:`random.Random` so runs are reproducible.
"""

from __future__ import annotations

import random
from typing import Sequence

from .semantics import F, Interpretation, T, U, find_counter_model
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
    is_stratified,
    normalize,
)


def atoms(names: str | Sequence[str]) -> list[Atom]:
    if isinstance(names, str):
        names = names.split()
    return [Atom(n) for n in names]


def random_formula(rng: random.Random, vocab: Sequence[Atom], depth: int,
                   constants: bool = True) -> Formula:
    """A PC formula of connective depth at most ``depth``."""
    if depth <= 0 or rng.random() < 0.25:
        if constants and rng.random() < 0.08:
            return rng.choice((TOP, BOT))
        return rng.choice(vocab)
    kind = rng.random()
    if kind < 0.3:
        return Not(random_formula(rng, vocab, depth - 1, constants))
    left = random_formula(rng, vocab, depth - 1, constants)
    right = random_formula(rng, vocab, depth - 1, constants)
    return And(left, right) if kind < 0.65 else Or(left, right)


def random_definition(rng: random.Random, defined: Sequence[Atom], vocab: Sequence[Atom],
                      depth: int = 2, extra_rules: int = 1) -> Definition:
    """A definition with the given heads; bodies range over ``vocab``."""
    rules = [(p, random_formula(rng, vocab, depth)) for p in defined]
    for _ in range(rng.randint(0, extra_rules)):
        rules.append((rng.choice(defined), random_formula(rng, vocab, depth)))
    rng.shuffle(rules)
    return normalize(rules)


def random_stratified_definition(rng: random.Random, defined: Sequence[Atom],
                                 opens: Sequence[Atom], depth: int = 2) -> Definition:
    """A stratified definition: negation only reaches open atoms or lower strata.

    Heads are put in a random order; a body may use earlier heads under any
    polarity and its own head positively.
    """
    order = list(defined)
    rng.shuffle(order)
    rules = []
    for i, p in enumerate(order):
        lower = list(opens) + order[:i]
        same = [p]
        rules.append((p, _stratified_body(rng, lower, same, depth, False)))
    d = normalize(rules)
    assert is_stratified(d)
    return d


def _stratified_body(rng, lower, same, depth, negated):
    if depth <= 0 or rng.random() < 0.3:
        pool = lower if negated or not same else lower + same
        return rng.choice(pool) if pool else (BOT if negated else TOP)
    kind = rng.random()
    if kind < 0.3:
        return Not(_stratified_body(rng, lower, same, depth - 1, not negated))
    l = _stratified_body(rng, lower, same, depth - 1, negated)
    r = _stratified_body(rng, lower, same, depth - 1, negated)
    return And(l, r) if kind < 0.65 else Or(l, r)


def random_interpretation(rng: random.Random, vocab: Sequence[Atom],
                          values=(F, U, T)) -> Interpretation:
    return Interpretation({a: rng.choice(values) for a in vocab})


def random_theory(rng: random.Random, vocab: Sequence[Atom], size: int, depth: int = 2,
                  definitions: int = 0) -> list[Formula]:
    out: list[Formula] = [random_formula(rng, vocab, depth) for _ in range(size)]
    for _ in range(definitions):
        heads = rng.sample(list(vocab), rng.randint(1, min(2, len(vocab))))
        out.insert(rng.randrange(len(out) + 1), random_definition(rng, heads, vocab))
    return out


def random_sequent(rng: random.Random, max_atoms: int = 5, max_defs: int = 2, depth: int = 3,
                   valid_bias: float = 0.5) -> Sequent:
    """A random sequent, often nudged towards validity.

    With probability ``valid_bias`` the succedent is grown by literals that
    refute successive counter-models, which makes valid sequents common.
    """
    vocab = atoms("o p q r s t u v".split()[:max_atoms])[: rng.randint(2, max_atoms)]
    defs = []
    for _ in range(rng.randint(0, max_defs)):
        heads = rng.sample(vocab, rng.randint(1, min(2, len(vocab))))
        defs.append(random_definition(rng, heads, vocab, depth=min(depth, 2), extra_rules=0))
    ant: list[Formula] = [random_formula(rng, vocab, depth - 1) for _ in range(rng.randint(0, 2))]
    suc: list[Formula] = [random_formula(rng, vocab, depth - 1) for _ in range(rng.randint(0, 2))]
    for d in defs:
        where = rng.random()
        if where < 0.75:
            ant.append(d)
        elif where < 0.85:
            ant.append(And(d, rng.choice(vocab)))
        elif where < 0.95:
            suc.append(d)
        else:
            suc.append(Not(d))
    s = Sequent(ant, suc)
    if rng.random() < valid_bias:
        for _ in range(4):
            cm = find_counter_model(s)
            if not cm:
                break
            a = rng.choice(sorted(cm))
            suc.append(a if cm[a] is F else Not(a))
            s = Sequent(ant, suc)
    return s


def random_proof_tree(rng: random.Random, depth: int = 3):
    """A syntactically well-formed proof tree; it need not check.  Used for round trips."""
    from .calculus import RULES, ProofTree, RuleParams, expected_arity

    vocab = atoms("o p q r")
    rule = rng.choice(RULES) if depth > 0 else rng.choice(("axiom-id", "axiom-bot", "axiom-top"))
    d = random_definition(rng, rng.sample(vocab, rng.randint(1, 2)), vocab)
    f = random_formula(rng, vocab, 2)
    params: dict = {}
    if rule == "cut":
        params["cutformula"] = f
    elif rule in ("not-l", "not-r"):
        params["formula"] = Not(f)
    elif rule in ("and-l", "and-r"):
        params["formula"] = And(f, rng.choice(vocab))
    elif rule in ("or-l", "or-r"):
        params["formula"] = Or(rng.choice(vocab), f)
    elif rule.startswith("def-"):
        params["formula"] = d
        heads = sorted(d.defined)
        if rule in ("def-r", "def-l"):
            params["atom"] = rng.choice(heads)
        if rule == "def-l":
            params["uset"] = {params["atom"]} | set(rng.sample(heads, rng.randint(0, len(heads))))
        if rule == "def-nontotal":
            params["vset"] = rng.sample(heads, rng.randint(1, len(heads)))
    elif rule not in ("axiom-bot", "axiom-top"):
        params["formula"] = rng.choice((f, d))
    rp = RuleParams.create(rule, params)
    renamed = [a.renamed(k) for a in vocab for k in ("renamed-pos", "renamed-neg", "primed")]
    pool = vocab + renamed[: rng.randint(0, len(renamed))]
    seq = Sequent(
        [random_formula(rng, pool, 2) for _ in range(rng.randint(0, 3))] + ([d] if rng.random() < 0.5 else []),
        [random_formula(rng, pool, 2) for _ in range(rng.randint(0, 2))],
    )
    premises = tuple(random_proof_tree(rng, depth - 1) for _ in range(expected_arity(rule, rp)))
    return ProofTree(rule, seq, rp, premises)


def depth2_bodies(vocab: Sequence[Atom]) -> list[Formula]:
    """Literals, constants, and binary conjunctions/disjunctions of literals over distinct atoms."""
    lits: list[Formula] = []
    for a in vocab:
        lits += [a, Not(a)]
    out: list[Formula] = lits + [TOP, BOT]
    for i, x in enumerate(lits):
        for y in lits[i + 1:]:
            if (x.body if isinstance(x, Not) else x) == (y.body if isinstance(y, Not) else y):
                continue
            out += [And(x, y), Or(x, y)]
    return out


def restricted_class_sequents():
    """Every sequent of the exhaustive completeness class over atoms ``o, p, q``.

    Definitions define ``{p}`` or ``{p, q}`` with bodies from :func:`depth2_bodies`.
    Two shapes are produced: ``D, Γ ⟶ Δ`` with ``Γ`` one of ``∅, {o}, {~o}`` and
    ``Δ`` empty or one literal over ``p``/``q``; and ``Γ ⟶ D`` for total ``D``
    with ``Γ`` a consistent set of literals over ``o``.
    """
    from itertools import product

    from .semantics import is_total

    o, p, q = atoms("o p q")
    bodies = depth2_bodies((o, p, q))
    defs = [Definition(((p, b),)) for b in bodies]
    defs += [Definition(((p, b1), (q, b2))) for b1, b2 in product(bodies, repeat=2)]
    contexts = [(), (o,), (Not(o),)]
    goals = [(), (p,), (Not(p),), (q,), (Not(q),)]
    for d in defs:
        for g, delta in product(contexts, goals):
            yield Sequent((d,) + g, delta)
        if is_total(d):
            for g in contexts:
                yield Sequent(g, (d,))

"""Reference implementations used to cross-check the library.

Nothing here calls into ``pcid.semantics``: evaluation, well-founded models
and validity are recomputed from scratch with plain Python, trading speed
for obviousness.
"""

from __future__ import annotations

from itertools import chain, combinations, product

from pcid.syntax import And, Atom, Bot, Definition, Not, Or, Top

FALSE, UNKNOWN, TRUE = 0, 1, 2


def kleene(f, values):
    """Three-valued value (0, 1, 2) of a propositional formula."""
    if isinstance(f, Atom):
        return values[f]
    if isinstance(f, Top):
        return TRUE
    if isinstance(f, Bot):
        return FALSE
    if isinstance(f, Not):
        return 2 - kleene(f.body, values)
    if isinstance(f, And):
        return min(kleene(f.left, values), kleene(f.right, values))
    if isinstance(f, Or):
        return max(kleene(f.left, values), kleene(f.right, values))
    raise TypeError(type(f).__name__)


def atoms_in(f) -> set:
    if isinstance(f, Atom):
        return {f}
    if isinstance(f, Not):
        return atoms_in(f.body)
    if isinstance(f, (And, Or)):
        return atoms_in(f.left) | atoms_in(f.right)
    if isinstance(f, Definition):
        out = set()
        for head, body in f.rules:
            out |= {head} | atoms_in(body)
        return out
    return set()


def signs(f, negated=False):
    """Map each atom to the set of signs (+1 / -1) it occurs with."""
    out: dict = {}

    def walk(g, neg):
        if isinstance(g, Atom):
            out.setdefault(g, set()).add(-1 if neg else 1)
        elif isinstance(g, Not):
            walk(g.body, not neg)
        elif isinstance(g, (And, Or)):
            walk(g.left, neg)
            walk(g.right, neg)

    walk(f, negated)
    return out


def _subsets(items):
    items = sorted(items)
    return chain.from_iterable(combinations(items, k) for k in range(len(items), 0, -1))


def wf_limit(d: Definition, opens: dict) -> dict:
    """Well-founded model by brute force over unfounded sets (largest first)."""
    rules = dict(d.rules)
    values = dict(opens)
    values.update({p: UNKNOWN for p in rules})
    while True:
        ready = [p for p in rules if values[p] == UNKNOWN and kleene(rules[p], values) == TRUE]
        if ready:
            values[ready[0]] = TRUE
            continue
        unknown = [p for p in rules if values[p] == UNKNOWN]
        for cand in _subsets(unknown):
            trial = dict(values)
            trial.update({p: FALSE for p in cand})
            if all(kleene(rules[p], trial) == FALSE for p in cand):
                values = trial
                break
        else:
            return values


def holds(f, world: dict) -> bool:
    """Two-valued truth of a PC(ID) formula in ``world`` (atom -> bool)."""
    if isinstance(f, Definition):
        opens = {a: TRUE if world[a] else FALSE for a in atoms_in(f) if a not in dict(f.rules)}
        limit = wf_limit(f, opens)
        return all(limit[p] == (TRUE if world[p] else FALSE) for p, _ in f.rules)
    if isinstance(f, Atom):
        return world[f]
    if isinstance(f, Top):
        return True
    if isinstance(f, Bot):
        return False
    if isinstance(f, Not):
        return not holds(f.body, world)
    if isinstance(f, And):
        return holds(f.left, world) and holds(f.right, world)
    if isinstance(f, Or):
        return holds(f.left, world) or holds(f.right, world)
    raise TypeError(type(f).__name__)


def worlds(atoms):
    atoms = sorted(atoms)
    for bits in product((False, True), repeat=len(atoms)):
        yield dict(zip(atoms, bits))


def valid(sequent) -> bool:
    vocab = set()
    for f in chain(sequent.antecedent, sequent.succedent):
        vocab |= atoms_in(f)
    for w in worlds(vocab):
        if all(holds(f, w) for f in sequent.antecedent) and not any(
            holds(f, w) for f in sequent.succedent
        ):
            return False
    return True


def satisfiable(theory) -> bool:
    vocab = set()
    for f in theory:
        vocab |= atoms_in(f)
    return any(all(holds(f, w) for f in theory) for w in worlds(vocab))


def leq_truth(a: int, b: int) -> bool:
    return a <= b


def leq_precision(a: int, b: int) -> bool:
    return a == UNKNOWN or a == b

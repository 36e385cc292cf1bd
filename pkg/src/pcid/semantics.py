"""Three-valued interpretations, well-founded models and brute-force oracles.

The oracles at the bottom of this module (validity, satisfiability, totality)
enumerate two-valued interpretations.  They are deliberately naive: the
prover and the proof checker are tested against them, so they must stay
independent of any proof machinery.
"""

from __future__ import annotations

import enum
import random
from collections.abc import Mapping
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Callable, Iterable, Iterator, Optional

from .errors import ResourceLimitError, UnknownAtomError
from .syntax import (
    And,
    Atom,
    Bot,
    Definition,
    Formula,
    Not,
    Or,
    Sequent,
    Top,
    atoms_of,
    is_literal,
    literal_atom,
)

MAX_ENUM_ATOMS = 22


class TruthValue(enum.IntEnum):
    """Truth values ordered by the truth order ``F < U < T``."""

    F = 0
    U = 1
    T = 2

    def inverse(self) -> TruthValue:
        return TruthValue(2 - self)

    def leq_precision(self, other: TruthValue) -> bool:
        return self is TruthValue.U or self is other

    def __str__(self) -> str:
        return self.name


T, F, U = TruthValue.T, TruthValue.F, TruthValue.U


class Interpretation(Mapping):
    """An immutable, hashable map from atoms to truth values."""

    __slots__ = ("_values", "_hash")

    def __init__(self, values: Mapping[Atom, TruthValue] | Iterable = ()):
        self._values = dict(values)
        self._hash = None

    @classmethod
    def from_literals(cls, literals: Iterable[Formula]) -> Interpretation:
        out = {}
        for lit in literals:
            if not is_literal(lit):
                raise ValueError(f"{lit} is not a literal")
            out[literal_atom(lit)] = T if isinstance(lit, Atom) else F
        return cls(out)

    def __getitem__(self, atom: Atom) -> TruthValue:
        return self._values[atom]

    def __iter__(self):
        return iter(self._values)

    def __len__(self) -> int:
        return len(self._values)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._values.items()))
        return self._hash

    def __eq__(self, other) -> bool:
        if isinstance(other, Interpretation):
            return self._values == other._values
        return NotImplemented

    def __repr__(self) -> str:
        body = ", ".join(f"{a.name}:{v.name}" for a, v in sorted(self._values.items()))
        return "{" + body + "}"

    @property
    def vocab(self) -> frozenset[Atom]:
        return frozenset(self._values)

    def is_two_valued(self) -> bool:
        return U not in self._values.values()

    def updated(self, atoms: Iterable[Atom], value: TruthValue) -> Interpretation:
        """``I[atoms/value]``."""
        values = dict(self._values)
        for a in atoms:
            values[a] = value
        return Interpretation(values)

    def restrict(self, atoms: Iterable[Atom]) -> Interpretation:
        return Interpretation({a: self._values[a] for a in atoms if a in self._values})

    def extend(self, other: Mapping[Atom, TruthValue]) -> Interpretation:
        values = dict(self._values)
        values.update(other)
        return Interpretation(values)

    def leq_truth(self, other: Interpretation) -> bool:
        return self.vocab == other.vocab and all(self[a] <= other[a] for a in self)

    def leq_precision(self, other: Interpretation) -> bool:
        return self.vocab == other.vocab and all(self[a].leq_precision(other[a]) for a in self)

    def literals(self) -> list[Formula]:
        """Literals true in this interpretation, in atom order; unknown atoms are skipped."""
        out = []
        for a in sorted(self._values):
            v = self._values[a]
            if v is T:
                out.append(a)
            elif v is F:
                out.append(Not(a))
        return out


def eval3(f: Formula, interp: Mapping[Atom, TruthValue]) -> TruthValue:
    """Kleene evaluation of a propositional formula."""
    if isinstance(f, Atom):
        try:
            return interp[f]
        except KeyError:
            raise UnknownAtomError(f"atom {f.name} is not interpreted") from None
    if isinstance(f, Not):
        return eval3(f.body, interp).inverse()
    if isinstance(f, And):
        left = eval3(f.left, interp)
        if left is F:
            return F
        return min(left, eval3(f.right, interp))
    if isinstance(f, Or):
        left = eval3(f.left, interp)
        if left is T:
            return T
        return max(left, eval3(f.right, interp))
    if isinstance(f, Top):
        return T
    if isinstance(f, Bot):
        return F
    raise TypeError("eval3 is defined on propositional formulas only; use truth()")


# ---------------------------------------------------------------------------
# well-founded inductions


@dataclass(frozen=True)
class WfStep:
    kind: str  # "derive-true" or "derive-false"
    atoms: frozenset[Atom]
    before: Interpretation
    after: Interpretation

    def __str__(self) -> str:
        names = ", ".join(a.name for a in sorted(self.atoms))
        return f"{self.kind} {{{names}}}"


@dataclass(frozen=True)
class WfTrace:
    definition: Definition
    start: Interpretation
    steps: tuple[WfStep, ...]

    @property
    def limit(self) -> Interpretation:
        return self.steps[-1].after if self.steps else self.start

    @property
    def terminal(self) -> bool:
        return not applicable_steps(self.definition, self.limit)

    def interpretations(self) -> list[Interpretation]:
        return [self.start] + [s.after for s in self.steps]


StepPolicy = Callable[[Definition, Interpretation], Optional[WfStep]]


def derivable_true(d: Definition, interp: Interpretation) -> list[Atom]:
    """Unknown defined atoms whose body is already true."""
    return [p for p, body in d.rules if interp[p] is U and eval3(body, interp) is T]


def greatest_unfounded_set(
    d: Definition, interp: Interpretation, within: Iterable[Atom] | None = None
) -> frozenset[Atom]:
    """Largest set of unknown defined atoms whose joint falsity falsifies their bodies.

    Computed as a greatest fixpoint: start from every unknown defined atom
    (or from ``within``) and drop atoms whose body survives the assumption
    that all remaining candidates are false.
    """
    if within is None:
        candidates = {p for p in d.defined if interp[p] is U}
    else:
        candidates = {p for p in within if p in d.defined and interp[p] is U}
    while candidates:
        assumed = interp.updated(candidates, F)
        keep = {p for p in candidates if eval3(d.body(p), assumed) is F}
        if keep == candidates:
            break
        candidates = keep
    return frozenset(candidates)


def applicable_steps(d: Definition, interp: Interpretation) -> bool:
    return bool(derivable_true(d, interp) or greatest_unfounded_set(d, interp))


def _true_step(d, interp, p):
    return WfStep("derive-true", frozenset((p,)), interp, interp.updated((p,), T))


def _false_step(d, interp, atoms):
    return WfStep("derive-false", frozenset(atoms), interp, interp.updated(atoms, F))


def lexicographic_policy(d: Definition, interp: Interpretation) -> WfStep | None:
    """Derive the least derivable true atom first, else falsify the greatest unfounded set."""
    ready = derivable_true(d, interp)
    if ready:
        return _true_step(d, interp, min(ready))
    unfounded = greatest_unfounded_set(d, interp)
    if unfounded:
        return _false_step(d, interp, unfounded)
    return None


class RandomPolicy:
    """Picks any legal step at random; only used to exercise confluence."""

    def __init__(self, rng: random.Random):
        self.rng = rng

    def __call__(self, d: Definition, interp: Interpretation) -> WfStep | None:
        ready = derivable_true(d, interp)
        unfounded = greatest_unfounded_set(d, interp)
        if not ready and not unfounded:
            return None
        if ready and (not unfounded or self.rng.random() < 0.5):
            return _true_step(d, interp, self.rng.choice(ready))
        members = sorted(unfounded)
        subset = [p for p in members if self.rng.random() < 0.5] or [self.rng.choice(members)]
        chosen = greatest_unfounded_set(d, interp, within=subset)
        return _false_step(d, interp, chosen or unfounded)


def initial_interpretation(d: Definition, open_interp: Mapping[Atom, TruthValue]) -> Interpretation:
    missing = d.open - set(open_interp)
    if missing:
        names = ", ".join(sorted(a.name for a in missing))
        raise UnknownAtomError(f"open atoms without a value: {names}")
    values = {a: open_interp[a] for a in d.open}
    if U in values.values():
        raise ValueError("the open interpretation must be two-valued")
    values.update({p: U for p in d.defined})
    return Interpretation(values)


def wf_trace(
    d: Definition,
    open_interp: Mapping[Atom, TruthValue],
    policy: StepPolicy | None = None,
) -> WfTrace:
    """Run a terminal well-founded induction from ``open_interp``."""
    policy = policy or lexicographic_policy
    interp = start = initial_interpretation(d, open_interp)
    steps = []
    while True:
        step = policy(d, interp)
        if step is None:
            break
        steps.append(step)
        interp = step.after
    return WfTrace(d, start, tuple(steps))


@lru_cache(maxsize=65536)
def _wf_model(d: Definition, start: Interpretation) -> Interpretation:
    interp = start
    while True:
        ready = derivable_true(d, interp)
        if ready:
            interp = interp.updated(ready, T)
            continue
        unfounded = greatest_unfounded_set(d, interp)
        if not unfounded:
            return interp
        interp = interp.updated(unfounded, F)


def wf_model(d: Definition, open_interp: Mapping[Atom, TruthValue]) -> Interpretation:
    """The well-founded partial interpretation of ``d`` extending ``open_interp``."""
    return _wf_model(d, initial_interpretation(d, open_interp))


def is_total_in(d: Definition, open_interp: Mapping[Atom, TruthValue]) -> bool:
    return wf_model(d, open_interp).is_two_valued()


# ---------------------------------------------------------------------------
# two-valued PC(ID) truth


def truth(f: Formula, interp: Mapping[Atom, TruthValue]) -> TruthValue:
    """Truth of a PC(ID)-formula; definitions hold iff ``interp`` is their well-founded model."""
    if isinstance(f, Definition):
        try:
            values = {a: interp[a] for a in f.atoms}
        except KeyError as exc:
            raise UnknownAtomError(f"atom {exc.args[0].name} is not interpreted") from None
        if U in values.values():
            return F
        model = wf_model(f, {a: values[a] for a in f.open})
        return T if all(model[p] is values[p] for p in f.defined) else F
    if isinstance(f, Not):
        return truth(f.body, interp).inverse()
    if isinstance(f, And):
        left = truth(f.left, interp)
        if left is F:
            return F
        return min(left, truth(f.right, interp))
    if isinstance(f, Or):
        left = truth(f.left, interp)
        if left is T:
            return T
        return max(left, truth(f.right, interp))
    return eval3(f, interp)


def satisfies(interp: Interpretation, f: Formula) -> bool:
    return interp.is_two_valued() and truth(f, interp) is T


def is_model(interp: Interpretation, theory: Iterable[Formula]) -> bool:
    return all(satisfies(interp, f) for f in theory)


def is_counter_model(interp: Interpretation, sequent: Sequent) -> bool:
    return all(satisfies(interp, f) for f in sequent.antecedent) and not any(
        satisfies(interp, f) for f in sequent.succedent
    )


# ---------------------------------------------------------------------------
# enumeration oracles


def enumerate_interpretations(
    atoms: Iterable[Atom], max_atoms: int = MAX_ENUM_ATOMS
) -> Iterator[Interpretation]:
    """All two-valued interpretations, lexicographic over sorted atoms with F before T."""
    atoms = sorted(set(atoms))
    if len(atoms) > max_atoms:
        raise ResourceLimitError(
            f"{len(atoms)} atoms exceed the enumeration bound of {max_atoms}"
        )
    for values in product((F, T), repeat=len(atoms)):
        yield Interpretation(zip(atoms, values))


def theory_atoms(theory: Iterable[Formula]) -> frozenset[Atom]:
    out: set[Atom] = set()
    for f in theory:
        out |= atoms_of(f)
    return frozenset(out)


def find_counter_model(sequent: Sequent, max_atoms: int = MAX_ENUM_ATOMS) -> Interpretation | None:
    for interp in enumerate_interpretations(sequent.atoms, max_atoms):
        if is_counter_model(interp, sequent):
            return interp
    return None


def is_valid(sequent: Sequent, max_atoms: int = MAX_ENUM_ATOMS) -> bool:
    return find_counter_model(sequent, max_atoms) is None


def find_model(theory: Iterable[Formula], max_atoms: int = MAX_ENUM_ATOMS) -> Interpretation | None:
    """First model of the theory in enumeration order, or ``None`` if unsatisfiable."""
    theory = list(theory)
    for interp in enumerate_interpretations(theory_atoms(theory), max_atoms):
        if is_model(interp, theory):
            return interp
    return None


def models(theory: Iterable[Formula], max_atoms: int = MAX_ENUM_ATOMS) -> Iterator[Interpretation]:
    theory = list(theory)
    for interp in enumerate_interpretations(theory_atoms(theory), max_atoms):
        if is_model(interp, theory):
            yield interp


def totality_witness(
    d: Definition, theory: Iterable[Formula] = (), max_atoms: int = MAX_ENUM_ATOMS
) -> Interpretation | None:
    """First model of ``theory`` in whose open part ``d`` is not total, if any."""
    theory = list(theory)
    vocab = theory_atoms(theory) | d.open
    for interp in enumerate_interpretations(vocab, max_atoms):
        if is_model(interp, theory) and not is_total_in(d, interp.restrict(d.open)):
            return interp
    return None


def is_total(d: Definition, theory: Iterable[Formula] = (), max_atoms: int = MAX_ENUM_ATOMS) -> bool:
    return totality_witness(d, theory, max_atoms) is None

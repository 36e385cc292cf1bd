"""Formulas, definitions and sequents of PC(ID).

Every value here is immutable and hashable.  Formula equality is purely
structural: ``p & q`` and ``q & p`` are different formulas, which is what
the proof checker needs when it matches rule shapes literally.

Generated atoms carry their provenance in the name.  The positive renaming
used by the left definition rule appends ``__r``, the negative renaming of
the non-total rule appends ``__d`` and the priming of the definition
introduction rule appends ``__p``.  User atoms may not contain ``__``, so a
generated atom can never collide with a user atom.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from functools import cached_property
from itertools import chain
from typing import Iterable, Iterator, Union

from .errors import MalformedDefinitionError, PolarityError

USER = "user"
RENAMED_POS = "renamed-pos"
RENAMED_NEG = "renamed-neg"
PRIMED = "primed"

_SUFFIX = {RENAMED_POS: "__r", RENAMED_NEG: "__d", PRIMED: "__p"}
_KIND = {suffix: kind for kind, suffix in _SUFFIX.items()}

USER_ATOM_RE = re.compile(r"[a-z][a-zA-Z0-9_]*")
RESERVED = frozenset({"true", "false"})


def is_user_atom_name(name: str) -> bool:
    return (
        USER_ATOM_RE.fullmatch(name) is not None
        and "__" not in name
        and name not in RESERVED
    )


def is_atom_name(name: str) -> bool:
    """True for user atom names and any stack of generated suffixes on one."""
    while name[-3:] in _KIND:
        name = name[:-3]
    return is_user_atom_name(name)


class Formula:
    """Marker base class of the formula AST."""

    __slots__ = ()

    def __str__(self) -> str:
        from .textio import format_formula

        return format_formula(self)


@dataclass(frozen=True, order=True, slots=True)
class Atom(Formula):
    name: str

    @property
    def kind(self) -> str:
        return _KIND.get(self.name[-3:], USER)

    @property
    def base(self) -> Atom | None:
        if self.kind == USER:
            return None
        return Atom(self.name[:-3])

    def renamed(self, kind: str, level: int = 1) -> Atom:
        return Atom(self.name + _SUFFIX[kind] * level)

    def __repr__(self) -> str:
        return f"Atom({self.name!r})"


@dataclass(frozen=True, slots=True)
class Top(Formula):
    pass


@dataclass(frozen=True, slots=True)
class Bot(Formula):
    pass


TOP = Top()
BOT = Bot()


@dataclass(frozen=True, slots=True)
class Not(Formula):
    body: Formula


@dataclass(frozen=True, slots=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True, slots=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Definition(Formula):
    """A normalized definition: exactly one rule per defined atom.

    ``rules`` is sorted by head name.  Build instances with :func:`normalize`
    unless the rules are already in that form.
    """

    rules: tuple[tuple[Atom, Formula], ...]
    _index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        index = {}
        for head, body in self.rules:
            if not isinstance(head, Atom):
                raise MalformedDefinitionError(f"rule head {head!r} is not an atom")
            if not is_pc(body):
                raise MalformedDefinitionError(
                    f"body of the rule for {head.name} contains a definition"
                )
            if head in index:
                raise MalformedDefinitionError(f"two rules for {head.name}; normalize first")
            index[head] = body
        if list(index) != sorted(index):
            raise MalformedDefinitionError("rules must be sorted by head")
        object.__setattr__(self, "_index", index)

    def body(self, head: Atom) -> Formula:
        return self._index[head]

    @cached_property
    def defined(self) -> frozenset[Atom]:
        return frozenset(self._index)

    @cached_property
    def atoms(self) -> frozenset[Atom]:
        out = set(self._index)
        for body in self._index.values():
            out |= atoms_of(body)
        return frozenset(out)

    @cached_property
    def open(self) -> frozenset[Atom]:
        return self.atoms - self.defined

    @cached_property
    def deps(self) -> frozenset[tuple[Atom, Atom]]:
        """Pairs ``(q, p)`` with ``q`` preceding ``p`` in the dependency order."""
        below = {p: set(atoms_of(body)) for p, body in self.rules}
        changed = True
        while changed:
            changed = False
            for p, qs in below.items():
                extra = set()
                for q in qs:
                    extra |= below.get(q, set())
                if not extra <= qs:
                    qs |= extra
                    changed = True
        return frozenset((q, p) for p, qs in below.items() for q in qs)

    def precedes(self, q: Atom, p: Atom) -> bool:
        return (q, p) in self.deps

    def is_recursive_in(self, p: Atom) -> bool:
        return (p, p) in self.deps

    def __hash__(self) -> int:
        return hash(self.rules)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Definition):
            return NotImplemented
        return self.rules == other.rules


PCIDFormula = Union[Atom, Top, Bot, Not, And, Or, Definition]


@dataclass(frozen=True)
class Sequent:
    """``antecedent ⟶ succedent`` over finite sets of formulas."""

    antecedent: frozenset = frozenset()
    succedent: frozenset = frozenset()

    def __init__(self, antecedent: Iterable[Formula] = (), succedent: Iterable[Formula] = ()):
        object.__setattr__(self, "antecedent", frozenset(antecedent))
        object.__setattr__(self, "succedent", frozenset(succedent))

    @cached_property
    def atoms(self) -> frozenset[Atom]:
        out: set[Atom] = set()
        for f in chain(self.antecedent, self.succedent):
            out |= atoms_of(f)
        return frozenset(out)

    def __str__(self) -> str:
        from .textio import format_sequent

        return format_sequent(self)


# ---------------------------------------------------------------------------
# construction helpers


def implies(a: Formula, b: Formula) -> Formula:
    return Or(Not(a), b)


def equiv(a: Formula, b: Formula) -> Formula:
    return Or(And(a, b), And(Not(a), Not(b)))


def conjoin(formulas: Iterable[Formula]) -> Formula:
    """Left-nested conjunction; the empty conjunction is ``true``."""
    items = list(formulas)
    if not items:
        return TOP
    out = items[0]
    for f in items[1:]:
        out = And(out, f)
    return out


def disjoin(formulas: Iterable[Formula]) -> Formula:
    items = list(formulas)
    if not items:
        return BOT
    out = items[0]
    for f in items[1:]:
        out = Or(out, f)
    return out


def is_literal(f: Formula) -> bool:
    return isinstance(f, Atom) or (isinstance(f, Not) and isinstance(f.body, Atom))


def literal_atom(f: Formula) -> Atom:
    return f if isinstance(f, Atom) else f.body


def complement(f: Formula) -> Formula:
    """The complementary literal: ``p`` for ``~p`` and ``~p`` for ``p``."""
    if isinstance(f, Atom):
        return Not(f)
    if isinstance(f, Not) and isinstance(f.body, Atom):
        return f.body
    raise ValueError(f"{f} is not a literal")


# ---------------------------------------------------------------------------
# structural queries


def subformulas(f: Formula) -> Iterator[Formula]:
    stack = [f]
    while stack:
        g = stack.pop()
        yield g
        if isinstance(g, Not):
            stack.append(g.body)
        elif isinstance(g, (And, Or)):
            stack.append(g.right)
            stack.append(g.left)


def is_pc(f: Formula) -> bool:
    return not any(isinstance(g, Definition) for g in subformulas(f))


def atoms_of(f: Formula) -> frozenset[Atom]:
    if isinstance(f, Atom):
        return frozenset((f,))
    if isinstance(f, Definition):
        return f.atoms
    out: set[Atom] = set()
    for g in subformulas(f):
        if isinstance(g, Atom):
            out.add(g)
        elif isinstance(g, Definition):
            out |= g.atoms
    return frozenset(out)


def _walk_parity(f: Formula, negated: bool = False):
    """Yield ``(node, negated)`` for every node, negated = odd number of ``~`` above."""
    stack = [(f, negated)]
    while stack:
        g, neg = stack.pop()
        yield g, neg
        if isinstance(g, Not):
            stack.append((g.body, not neg))
        elif isinstance(g, (And, Or)):
            stack.append((g.right, neg))
            stack.append((g.left, neg))


class Polarity(enum.Enum):
    POSITIVE = "positive-only"
    NEGATIVE = "negative-only"
    BOTH = "both"
    ABSENT = "absent"


def polarity(f: Formula, atom: Atom) -> Polarity:
    pos = neg = False
    for g, negated in _walk_parity(f):
        if isinstance(g, Definition):
            if atom in g.atoms:
                raise PolarityError(f"{atom.name} occurs inside a nested definition")
        elif g == atom:
            if negated:
                neg = True
            else:
                pos = True
    if pos and neg:
        return Polarity.BOTH
    if pos:
        return Polarity.POSITIVE
    if neg:
        return Polarity.NEGATIVE
    return Polarity.ABSENT


def definition_occurrences(f: Formula) -> Iterator[tuple[Definition, bool]]:
    """Yield ``(definition, positive)`` for every definition node in ``f``."""
    for g, negated in _walk_parity(f):
        if isinstance(g, Definition):
            yield g, not negated


def normalize(rules: Iterable[tuple[Atom, Formula]]) -> Definition:
    """Merge rules sharing a head into one rule whose body is the disjunction.

    Bodies for the same head are combined left to right in input order.
    """
    merged: dict[Atom, Formula] = {}
    for head, body in rules:
        if not isinstance(head, Atom):
            raise MalformedDefinitionError(f"rule head {head!r} is not an atom")
        if not is_pc(body):
            raise MalformedDefinitionError(
                f"body of a rule for {head.name} contains a definition"
            )
        merged[head] = Or(merged[head], body) if head in merged else body
    return Definition(tuple(sorted(merged.items(), key=lambda kv: kv[0])))


def is_stratified(d: Definition) -> bool:
    for p, body in d.rules:
        for g, negated in _walk_parity(body):
            if negated and isinstance(g, Atom) and d.precedes(p, g):
                return False
    return True


# ---------------------------------------------------------------------------
# renamings


def _rename(f: Formula, pos: dict, neg: dict, negated: bool = False) -> Formula:
    if isinstance(f, Atom):
        table = neg if negated else pos
        return table.get(f, f)
    if isinstance(f, Not):
        return Not(_rename(f.body, pos, neg, not negated))
    if isinstance(f, And):
        return And(_rename(f.left, pos, neg, negated), _rename(f.right, pos, neg, negated))
    if isinstance(f, Or):
        return Or(_rename(f.left, pos, neg, negated), _rename(f.right, pos, neg, negated))
    if isinstance(f, (Top, Bot)):
        return f
    raise MalformedDefinitionError("renaming is only defined on propositional formulas")


def rename_pos(f: Formula, atoms: Iterable[Atom], level: int = 1) -> Formula:
    """Replace positive occurrences of the given atoms by their ``__r`` copies."""
    table = {a: a.renamed(RENAMED_POS, level) for a in atoms}
    return _rename(f, table, {})


def rename_diamond(f: Formula, atoms: Iterable[Atom], level: int = 1) -> Formula:
    """Positive occurrences get the ``__r`` copy, negative ones the ``__d`` copy."""
    atoms = list(atoms)
    pos = {a: a.renamed(RENAMED_POS, level) for a in atoms}
    neg = {a: a.renamed(RENAMED_NEG, level) for a in atoms}
    return _rename(f, pos, neg)


def diamond_definition(d: Definition, atoms: Iterable[Atom], level: int = 1) -> Definition:
    """The definition used by the non-total rule: renamed rules for ``atoms`` only."""
    atoms = frozenset(atoms)
    return Definition(
        tuple(
            sorted(
                (
                    (p.renamed(RENAMED_POS, level), rename_diamond(body, atoms, level))
                    for p, body in d.rules
                    if p in atoms
                ),
                key=lambda kv: kv[0],
            )
        )
    )


def prime_definition(d: Definition, level: int = 1) -> Definition:
    table = {p: p.renamed(PRIMED, level) for p in d.defined}
    return Definition(
        tuple(
            sorted(
                ((table[p], _rename(body, table, table)) for p, body in d.rules),
                key=lambda kv: kv[0],
            )
        )
    )


def fresh_level(used: frozenset[Atom], atoms: Iterable[Atom], kinds: Iterable[str]) -> int:
    """Smallest suffix repetition count making every generated copy unused."""
    atoms = list(atoms)
    kinds = list(kinds)
    level = 1
    while any(a.renamed(k, level) in used for a in atoms for k in kinds):
        level += 1
    return level

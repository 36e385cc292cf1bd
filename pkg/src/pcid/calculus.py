"""Rules of the sequent calculus for PC(ID), proof trees and the proof checker.

Every rule is described by a schema: the formulas it introduces in the
conclusion (its principal formulas) and a function computing conclusion and
premises from the rule parameters and a side context ``Gamma ⟶ Delta``.

Sequents are sets, so the context of a conclusion is ambiguous when a
principal formula also belongs to the context.  The checker therefore tries
every context ``conclusion minus principals plus K`` for K a subset of the
principals, and accepts the node if any of them yields exactly the listed
premises.

Fresh atoms for the renamings are derived from the conclusion: the suffix is
repeated the least number of times that avoids every atom already occurring
there.  The checker and the prover use the same computation, so a proof
never has to name its fresh atoms explicitly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Iterator, Mapping, Optional

from .errors import ResourceLimitError, SchemaMismatch, UnknownRuleError
from .syntax import (
    BOT,
    PRIMED,
    RENAMED_NEG,
    RENAMED_POS,
    TOP,
    And,
    Atom,
    Definition,
    Formula,
    Not,
    Or,
    Sequent,
    conjoin,
    diamond_definition,
    equiv,
    fresh_level,
    prime_definition,
    rename_pos,
)

RULES = (
    "axiom-id",
    "axiom-bot",
    "axiom-top",
    "weaken-l",
    "weaken-r",
    "contract-l",
    "contract-r",
    "cut",
    "not-l",
    "not-r",
    "and-l",
    "and-r",
    "or-l",
    "or-r",
    "def-r",
    "def-l",
    "def-nontotal",
    "def-intro",
)
AXIOMS = frozenset({"axiom-id", "axiom-bot", "axiom-top"})
PARAM_KEYS = ("formula", "atom", "uset", "vset", "cutformula")

_REQUIRED = {
    "axiom-id": ("formula",),
    "axiom-bot": (),
    "axiom-top": (),
    "cut": ("cutformula",),
    "def-r": ("formula", "atom"),
    "def-l": ("formula", "atom", "uset"),
    "def-nontotal": ("formula", "vset"),
    "def-intro": ("formula",),
}
for _name in ("weaken-l", "weaken-r", "contract-l", "contract-r",
              "not-l", "not-r", "and-l", "and-r", "or-l", "or-r"):
    _REQUIRED[_name] = ("formula",)

_SHAPE = {"not-l": Not, "not-r": Not, "and-l": And, "and-r": And, "or-l": Or, "or-r": Or}


@dataclass(frozen=True)
class RuleParams:
    """Named rule parameters; absent ones are ``None``."""

    formula: Optional[Formula] = None
    atom: Optional[Atom] = None
    uset: Optional[frozenset] = None
    vset: Optional[frozenset] = None
    cutformula: Optional[Formula] = None

    @classmethod
    def create(cls, rule: str, values: Mapping[str, object] | None = None, **kw) -> RuleParams:
        """Validate parameter names and types for ``rule``."""
        if rule not in _REQUIRED:
            raise UnknownRuleError(f"unknown rule {rule!r}")
        values = dict(values or {}, **kw)
        required = _REQUIRED[rule]
        extra = set(values) - set(required)
        if extra:
            raise ValueError(f"unexpected parameter(s) {', '.join(sorted(extra))}")
        missing = [k for k in required if values.get(k) is None]
        if missing:
            raise ValueError(f"missing parameter(s) {', '.join(missing)}")
        for key in ("uset", "vset"):
            if key in values:
                values[key] = frozenset(values[key])
                if not values[key] or not all(isinstance(a, Atom) for a in values[key]):
                    raise ValueError(f"{key} must be a non-empty set of atoms")
        if "atom" in values and not isinstance(values["atom"], Atom):
            raise ValueError("atom must be an atom")
        f = values.get("formula")
        if rule.startswith("def-") and not isinstance(f, Definition):
            raise ValueError("formula must be a definition")
        if rule in _SHAPE and not isinstance(f, _SHAPE[rule]):
            raise ValueError(f"formula must be a {_SHAPE[rule].__name__} node")
        return cls(**values)

    def items(self) -> Iterator[tuple[str, object]]:
        for key in PARAM_KEYS:
            value = getattr(self, key)
            if value is not None:
                yield key, value


def expected_arity(rule: str, params: RuleParams) -> int:
    if rule in AXIOMS:
        return 0
    if rule in ("cut", "and-r", "or-l", "def-nontotal"):
        return 2
    if rule == "def-l":
        return len(params.uset)
    if rule == "def-intro":
        return len(params.formula.defined)
    return 1


@dataclass(frozen=True)
class ProofTree:
    rule: str
    sequent: Sequent
    params: RuleParams = field(default_factory=RuleParams)
    premises: tuple = ()

    def __post_init__(self):
        if self.rule not in _REQUIRED:
            raise UnknownRuleError(f"unknown rule {self.rule!r}")

    def nodes(self) -> Iterator[ProofTree]:
        stack = [self]
        while stack:
            node = stack.pop()
            yield node
            stack.extend(reversed(node.premises))

    def size(self) -> int:
        return sum(1 for _ in self.nodes())

    def __str__(self) -> str:
        from .textio import format_proof

        return format_proof(self)


# ---------------------------------------------------------------------------
# schemas


def _check_definition_params(rule: str, p: RuleParams):
    d = p.formula
    if rule == "def-r" and p.atom not in d.defined:
        raise SchemaMismatch(f"def-r: {p.atom.name} is not defined in the definition")
    if rule == "def-l":
        if not p.uset <= d.defined:
            raise SchemaMismatch("def-l: uset contains atoms not defined in the definition")
        if p.atom not in p.uset:
            raise SchemaMismatch(f"def-l: {p.atom.name} is not a member of uset")
    if rule == "def-nontotal" and not p.vset <= d.defined:
        raise SchemaMismatch("def-nontotal: vset contains atoms not defined in the definition")


def principals(rule: str, p: RuleParams) -> tuple[frozenset, frozenset]:
    """Formulas the rule introduces on the left and on the right of its conclusion."""
    f = p.formula
    if rule in ("weaken-l", "contract-l", "not-l", "and-l", "or-l"):
        return frozenset((f,)), frozenset()
    if rule in ("weaken-r", "contract-r", "not-r", "and-r", "or-r", "def-intro"):
        return frozenset(), frozenset((f,))
    if rule == "def-r":
        return frozenset((f,)), frozenset((p.atom,))
    if rule == "def-l":
        return frozenset((f, p.atom)), frozenset()
    if rule == "def-nontotal":
        return frozenset((f,)), frozenset()
    return frozenset(), frozenset()


def renaming_level(rule: str, p: RuleParams, conclusion: Sequent) -> int:
    """Suffix repetition count for the fresh atoms of a definition rule."""
    if rule == "def-l":
        return fresh_level(conclusion.atoms, p.uset, (RENAMED_POS,))
    if rule == "def-nontotal":
        return fresh_level(conclusion.atoms, p.vset, (RENAMED_POS, RENAMED_NEG))
    if rule == "def-intro":
        return fresh_level(conclusion.atoms, p.formula.defined, (PRIMED,))
    return 1


def nontotal_parts(d: Definition, vset: Iterable[Atom], level: int):
    """``(D◇, V▷ atoms, V◇ atoms)`` in sorted order for the non-total rule."""
    vs = sorted(vset)
    return (
        diamond_definition(d, vs, level),
        [v.renamed(RENAMED_POS, level) for v in vs],
        [v.renamed(RENAMED_NEG, level) for v in vs],
    )


def instantiate(
    rule: str, p: RuleParams, gamma: frozenset, delta: frozenset
) -> tuple[Sequent, tuple[Sequent, ...]]:
    """Conclusion and premises of ``rule`` for the side context ``gamma ⟶ delta``."""
    left, right = principals(rule, p)
    conclusion = Sequent(gamma | left, delta | right)
    f = p.formula
    if rule == "axiom-id":
        conclusion = Sequent(gamma | {f}, delta | {f})
        return conclusion, ()
    if rule == "axiom-bot":
        return Sequent(gamma | {BOT}, delta), ()
    if rule == "axiom-top":
        return Sequent(gamma, delta | {TOP}), ()
    if rule in ("weaken-l", "weaken-r"):
        return conclusion, (Sequent(gamma, delta),)
    if rule in ("contract-l", "contract-r"):
        return conclusion, (conclusion,)
    if rule == "cut":
        a = p.cutformula
        return conclusion, (Sequent(gamma, delta | {a}), Sequent(gamma | {a}, delta))
    if rule == "not-l":
        return conclusion, (Sequent(gamma, delta | {f.body}),)
    if rule == "not-r":
        return conclusion, (Sequent(gamma | {f.body}, delta),)
    if rule == "and-l":
        return conclusion, (Sequent(gamma | {f.left, f.right}, delta),)
    if rule == "and-r":
        return conclusion, (Sequent(gamma, delta | {f.left}), Sequent(gamma, delta | {f.right}))
    if rule == "or-l":
        return conclusion, (Sequent(gamma | {f.left}, delta), Sequent(gamma | {f.right}, delta))
    if rule == "or-r":
        return conclusion, (Sequent(gamma, delta | {f.left, f.right}),)

    _check_definition_params(rule, p)
    level = renaming_level(rule, p, conclusion)
    if rule == "def-r":
        return conclusion, (Sequent(gamma, delta | {f.body(p.atom)}),)
    if rule == "def-l":
        us = sorted(p.uset)
        neg_renamed = {Not(u.renamed(RENAMED_POS, level)) for u in us}
        return conclusion, tuple(
            Sequent(gamma | neg_renamed, delta | {Not(rename_pos(f.body(u), us, level))})
            for u in us
        )
    if rule == "def-nontotal":
        ddia, vpos, vneg = nontotal_parts(f, p.vset, level)
        first = Sequent(
            gamma | {ddia} | set(vneg), delta | {conjoin(Not(a) for a in vpos)}
        )
        second = Sequent(
            gamma | {ddia} | {Not(a) for a in vneg}, delta | {conjoin(vpos)}
        )
        return conclusion, (first, second)
    if rule == "def-intro":
        primed = prime_definition(f, level)
        return conclusion, tuple(
            Sequent(gamma | {primed}, delta | {equiv(q.renamed(PRIMED, level), q)})
            for q in sorted(f.defined)
        )
    raise UnknownRuleError(f"unknown rule {rule!r}")


def derive(
    rule: str, params: RuleParams, gamma: Iterable[Formula] = (), delta: Iterable[Formula] = ()
) -> tuple[Sequent, tuple[Sequent, ...]]:
    """Forward use of a rule: conclusion and premises for an explicit context."""
    return instantiate(rule, params, frozenset(gamma), frozenset(delta))


def _subsets(items: frozenset) -> Iterator[frozenset]:
    items = sorted(items, key=repr)
    for r in range(len(items) + 1):
        for combo in combinations(items, r):
            yield frozenset(combo)


def _match(rule: str, p: RuleParams, conclusion: Sequent, premises: tuple[Sequent, ...]) -> str | None:
    """Return ``None`` when the node fits the schema, otherwise a description of the misfit."""
    ant, suc = conclusion.antecedent, conclusion.succedent
    f = p.formula
    if rule in AXIOMS and premises:
        return f"{rule}: an axiom has no premises"
    if rule == "axiom-id":
        if f in ant and f in suc:
            return None
        return f"axiom-id: {f} must occur on both sides"
    if rule == "axiom-bot":
        return None if BOT in ant else "axiom-bot: false is not in the antecedent"
    if rule == "axiom-top":
        return None if TOP in suc else "axiom-top: true is not in the succedent"
    left, right = principals(rule, p)
    if not left <= ant:
        missing = ", ".join(str(x) for x in left - ant)
        return f"{rule}: conclusion antecedent lacks {missing}"
    if not right <= suc:
        missing = ", ".join(str(x) for x in right - suc)
        return f"{rule}: conclusion succedent lacks {missing}"
    if rule in ("def-r", "def-l", "def-nontotal", "def-intro"):
        try:
            _check_definition_params(rule, p)
        except SchemaMismatch as exc:
            return str(exc)
    base_g, base_d = ant - left, suc - right
    closest = None
    for kg in _subsets(left):
        for kd in _subsets(right):
            _, expected = instantiate(rule, p, base_g | kg, base_d | kd)
            if expected == premises:
                return None
            if closest is None:
                closest = expected
    return _describe_mismatch(rule, closest, premises)


def _describe_mismatch(rule: str, expected: tuple, actual: tuple) -> str:
    if len(expected) != len(actual):
        return f"{rule}: expected {len(expected)} premise(s), found {len(actual)}"
    for i, (e, a) in enumerate(zip(expected, actual), 1):
        if e != a:
            parts = []
            for side, es, as_ in (("antecedent", e.antecedent, a.antecedent),
                                  ("succedent", e.succedent, a.succedent)):
                if es - as_:
                    parts.append(f"{side} missing {', '.join(map(str, es - as_))}")
                if as_ - es:
                    parts.append(f"{side} has unexpected {', '.join(map(str, as_ - es))}")
            return f"{rule}: premise {i} differs from the schema ({'; '.join(parts)}); expected {e}"
    return f"{rule}: premises do not fit the schema"


@dataclass(frozen=True)
class RuleInstance:
    rule: str
    params: RuleParams
    conclusion: Sequent
    premises: tuple[Sequent, ...]


def make_rule_instance(
    rule: str,
    params: RuleParams | Mapping[str, object],
    conclusion: Sequent,
    premises: Iterable[Sequent],
) -> RuleInstance:
    """Validate one inference step; raises :class:`SchemaMismatch` on misfit."""
    if rule not in _REQUIRED:
        raise UnknownRuleError(f"unknown rule {rule!r}")
    if not isinstance(params, RuleParams):
        try:
            params = RuleParams.create(rule, params)
        except ValueError as exc:
            raise SchemaMismatch(f"{rule}: {exc}") from None
    premises = tuple(premises)
    problem = _match(rule, params, conclusion, premises)
    if problem:
        raise SchemaMismatch(problem)
    return RuleInstance(rule, params, conclusion, premises)


# ---------------------------------------------------------------------------
# checking


@dataclass(frozen=True)
class CheckReport:
    accepted: bool
    root: Sequent
    uses_def_intro: bool
    introduced_definitions: tuple[Definition, ...]
    errors: tuple[str, ...] = ()
    totality: Optional[tuple[tuple[Definition, Optional[bool]], ...]] = None

    @property
    def totality_discharged(self) -> bool | None:
        """``True`` when every introduced definition was shown total, ``False`` if one is not."""
        if self.totality is None:
            return None
        values = [v for _, v in self.totality]
        if any(v is False for v in values):
            return False
        if any(v is None for v in values):
            return None
        return True

    @property
    def certifies_validity(self) -> bool:
        if not self.accepted:
            return False
        return not self.uses_def_intro or self.totality_discharged is True


def check_proof(
    tree: ProofTree, verify_totality: bool = False, max_atoms: int | None = None
) -> CheckReport:
    """Check every node of ``tree`` against its rule schema."""
    errors = []
    introduced: list[Definition] = []
    stack = [(tree, "root")]
    while stack:
        node, path = stack.pop()
        if node.rule == "def-intro" and node.params.formula not in introduced:
            introduced.append(node.params.formula)
        try:
            params = node.params
            if not isinstance(params, RuleParams):
                raise SchemaMismatch(f"{node.rule}: parameters are not RuleParams")
            RuleParams.create(node.rule, dict(params.items()))
            if expected_arity(node.rule, params) != len(node.premises):
                raise SchemaMismatch(
                    f"{node.rule}: expected {expected_arity(node.rule, params)} premise(s), "
                    f"found {len(node.premises)}"
                )
            problem = _match(node.rule, params, node.sequent, tuple(c.sequent for c in node.premises))
            if problem:
                raise SchemaMismatch(problem)
        except (SchemaMismatch, ValueError) as exc:
            errors.append(f"{path}: {exc}")
        for i, child in enumerate(node.premises, 1):
            stack.append((child, f"{path}.{i}"))
    totality = None
    if verify_totality and introduced:
        from .semantics import MAX_ENUM_ATOMS, is_total

        results = []
        for d in introduced:
            try:
                results.append((d, is_total(d, (), max_atoms or MAX_ENUM_ATOMS)))
            except ResourceLimitError:
                results.append((d, None))
        totality = tuple(results)
    elif verify_totality:
        totality = ()
    return CheckReport(
        accepted=not errors,
        root=tree.sequent,
        uses_def_intro=bool(introduced),
        introduced_definitions=tuple(introduced),
        errors=tuple(errors),
        totality=totality,
    )


# ---------------------------------------------------------------------------
# applicable rules


@dataclass(frozen=True)
class RuleTemplate:
    """A rule whose conclusion matches a sequent, with parameters left open."""

    rule: str
    params: Mapping[str, object]
    unresolved: tuple[str, ...] = ()

    def __str__(self) -> str:
        shown = ", ".join(f"{k}={_show(v)}" for k, v in self.params.items())
        todo = f" [choose {', '.join(self.unresolved)}]" if self.unresolved else ""
        return f"{self.rule}({shown}){todo}"


def _show(v) -> str:
    if isinstance(v, frozenset):
        return "{" + ", ".join(sorted(a.name for a in v)) + "}"
    return str(v)


def applicable_rules(s: Sequent) -> list[RuleTemplate]:
    """Every rule whose conclusion can be ``s``.

    Axioms come first, then cut, then the left rules and the right rules for
    each formula in printed order.
    """
    from .textio import sorted_formulas

    out: list[RuleTemplate] = []
    ant, suc = sorted_formulas(s.antecedent), sorted_formulas(s.succedent)
    for f in ant:
        if f in s.succedent:
            out.append(RuleTemplate("axiom-id", {"formula": f}))
    if BOT in s.antecedent:
        out.append(RuleTemplate("axiom-bot", {}))
    if TOP in s.succedent:
        out.append(RuleTemplate("axiom-top", {}))
    out.append(RuleTemplate("cut", {}, ("cutformula",)))
    for f in ant:
        out.append(RuleTemplate("weaken-l", {"formula": f}))
        out.append(RuleTemplate("contract-l", {"formula": f}))
        kind = {Not: "not-l", And: "and-l", Or: "or-l"}.get(type(f))
        if kind:
            out.append(RuleTemplate(kind, {"formula": f}))
        if isinstance(f, Definition):
            for a in sorted(f.defined):
                if a in s.succedent:
                    out.append(RuleTemplate("def-r", {"formula": f, "atom": a}))
                if a in s.antecedent:
                    out.append(RuleTemplate("def-l", {"formula": f, "atom": a}, ("uset",)))
            if f.defined:
                out.append(RuleTemplate("def-nontotal", {"formula": f}, ("vset",)))
    for f in suc:
        out.append(RuleTemplate("weaken-r", {"formula": f}))
        out.append(RuleTemplate("contract-r", {"formula": f}))
        kind = {Not: "not-r", And: "and-r", Or: "or-r"}.get(type(f))
        if kind:
            out.append(RuleTemplate(kind, {"formula": f}))
        if isinstance(f, Definition):
            out.append(RuleTemplate("def-intro", {"formula": f}))
    return out

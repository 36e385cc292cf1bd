import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from strategies import VOCAB, definitions, formulas
from pcid.errors import MalformedDefinitionError, PolarityError
from pcid.syntax import (
    BOT,
    PRIMED,
    RENAMED_NEG,
    RENAMED_POS,
    TOP,
    And,
    Atom,
    Definition,
    Not,
    Or,
    Polarity,
    Sequent,
    complement,
    conjoin,
    definition_occurrences,
    diamond_definition,
    disjoin,
    equiv,
    fresh_level,
    is_literal,
    is_pc,
    is_stratified,
    normalize,
    polarity,
    prime_definition,
    rename_diamond,
    rename_pos,
)
from pcid.textio import parse_formula

o, p, q, r = (Atom(n) for n in "opqr")


def test_generated_atom_kinds():
    assert p.kind == "user" and p.base is None
    assert p.renamed(RENAMED_POS).name == "p__r"
    assert p.renamed(RENAMED_NEG, 2).name == "p__d__d"
    assert Atom("p__p").kind == PRIMED and Atom("p__p").base == p


def test_normalize_merges_rules_by_disjunction_in_input_order():
    d = normalize([(q, p), (p, o), (q, r)])
    assert d.rules == ((p, o), (q, Or(p, r)))
    assert d.defined == {p, q}
    assert d.open == {o, r}


def test_definition_rejects_nested_definitions_and_duplicate_heads():
    inner = normalize([(p, o)])
    with pytest.raises(MalformedDefinitionError):
        normalize([(q, inner)])
    with pytest.raises(MalformedDefinitionError):
        Definition(((p, o), (p, q)))
    with pytest.raises(MalformedDefinitionError):
        Definition(((q, o), (p, o)))


def test_dependency_relation_is_transitive():
    d = parse_formula("{p <- q. q <- r & ~o. r <- r.}")
    assert d.precedes(r, p) and d.precedes(o, p)
    assert d.is_recursive_in(r) and not d.is_recursive_in(p)


def test_stratification_examples():
    assert is_stratified(parse_formula("{p <- ~q. q <- o.}"))
    assert is_stratified(parse_formula("{p <- p | o.}"))
    assert not is_stratified(parse_formula("{p <- ~p.}"))
    assert not is_stratified(parse_formula("{p <- ~q. q <- p.}"))


def test_polarity_counts_negations_on_the_path():
    f = parse_formula("~(p & ~q) | r")
    assert polarity(f, p) is Polarity.NEGATIVE
    assert polarity(f, q) is Polarity.POSITIVE
    assert polarity(parse_formula("p & ~p"), p) is Polarity.BOTH
    assert polarity(f, o) is Polarity.ABSENT
    with pytest.raises(PolarityError):
        polarity(parse_formula("~{p <- o.}"), o)


def test_definition_occurrences_report_sign():
    d = normalize([(p, o)])
    found = list(definition_occurrences(And(Not(d), Or(q, d))))
    assert sorted(pos for _, pos in found) == [False, True]


def test_connective_helpers():
    assert conjoin([]) == TOP and disjoin([]) == BOT
    assert conjoin([p, q, r]) == And(And(p, q), r)
    assert equiv(p, q) == Or(And(p, q), And(Not(p), Not(q)))
    assert complement(Not(p)) == p and complement(p) == Not(p)
    assert is_literal(Not(p)) and not is_literal(Not(Not(p)))
    assert not is_pc(And(p, normalize([(q, o)])))


def test_sequent_is_a_pair_of_sets():
    assert Sequent([p, p, q], [r]) == Sequent([q, p], [r])
    assert Sequent([normalize([(p, o)])], []).atoms == {o, p}


def test_rename_pos_only_touches_positive_occurrences():
    f = parse_formula("p & ~p & ~~p")
    assert rename_pos(f, [p]) == parse_formula("p__r & ~p & ~~p__r", allow_generated=True)


def test_diamond_definition_renames_heads_and_splits_occurrences():
    d = parse_formula("{p <- ~q & p. q <- o.}")
    dd = diamond_definition(d, [p, q])
    assert dd == parse_formula("{p__r <- ~q__d & p__r. q__r <- o.}", allow_generated=True)
    assert diamond_definition(d, [p]).defined == {p.renamed(RENAMED_POS)}


def test_prime_definition_renames_every_defined_occurrence():
    d = parse_formula("{p <- ~q & o. q <- p.}")
    assert prime_definition(d) == parse_formula("{p__p <- ~q__p & o. q__p <- p__p.}", allow_generated=True)


def test_fresh_level_skips_used_suffixes():
    used = frozenset({p, p.renamed(RENAMED_POS)})
    assert fresh_level(used, [p], [RENAMED_POS]) == 2
    assert fresh_level(used, [p], [RENAMED_NEG]) == 1


# ---------------------------------------------------------------------------
# properties


@given(definitions())
def test_normalize_is_idempotent(d):
    assert normalize(d.rules) == d


@given(formulas(), st.sets(st.sampled_from(VOCAB)))
def test_rename_pos_is_idempotent(f, chosen):
    once = rename_pos(f, chosen)
    assert rename_pos(once, chosen) == once


@given(formulas(), st.sets(st.sampled_from(VOCAB), min_size=1))
def test_diamond_copies_respect_polarity(f, chosen):
    signs = oracles.signs(rename_diamond(f, chosen))
    for a in chosen:
        assert signs.get(a.renamed(RENAMED_POS), {1}) == {1}
        assert signs.get(a.renamed(RENAMED_NEG), {-1}) == {-1}
        assert a not in signs


@given(definitions())
def test_dependency_closure(d):
    deps = d.deps
    for a, b in deps:
        for c, e in deps:
            if b == c:
                assert (a, e) in deps
    for head, body in d.rules:
        for atom in oracles.atoms_in(body):
            assert (atom, head) in deps

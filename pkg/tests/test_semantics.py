import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from strategies import VOCAB, definitions, formulas, interpretations, sequents
from pcid.errors import ResourceLimitError, UnknownAtomError
from pcid.semantics import (
    MAX_ENUM_ATOMS,
    F,
    Interpretation,
    RandomPolicy,
    T,
    TruthValue,
    U,
    enumerate_interpretations,
    eval3,
    find_counter_model,
    find_model,
    greatest_unfounded_set,
    initial_interpretation,
    is_counter_model,
    is_total,
    is_total_in,
    is_valid,
    models,
    totality_witness,
    truth,
    wf_model,
    wf_trace,
)
from pcid.syntax import Atom, Sequent
from pcid.textio import parse_formula, parse_sequent, parse_theory

o, p, q, r = (Atom(n) for n in "opqr")


def test_truth_value_order_and_inverse():
    assert F < U < T
    assert [v.inverse() for v in (F, U, T)] == [T, U, F]
    assert U.leq_precision(T) and U.leq_precision(F) and not T.leq_precision(F)


def test_interpretation_is_immutable_mapping():
    i = Interpretation({p: T, q: U})
    j = i.updated([q], F)
    assert i[q] is U and j[q] is F
    assert i.leq_precision(j) and not j.leq_precision(i)
    assert Interpretation({p: F}).leq_truth(Interpretation({p: T}))
    assert repr(j) == "{p:T, q:F}"
    assert Interpretation.from_literals([p, parse_formula("~q")]) == Interpretation({p: T, q: F})


def test_eval3_kleene_tables():
    i = Interpretation({p: T, q: U, r: F})
    assert eval3(parse_formula("p & q"), i) is U
    assert eval3(parse_formula("r & q"), i) is F
    assert eval3(parse_formula("p | q"), i) is T
    assert eval3(parse_formula("~q | r"), i) is U
    assert eval3(parse_formula("true & ~false"), i) is T
    with pytest.raises(UnknownAtomError):
        eval3(o, i)
    with pytest.raises(TypeError):
        eval3(parse_formula("{p <- q.}"), i)


def test_positive_loop_is_unfounded():
    d = parse_formula("{p <- q. q <- p.}")
    trace = wf_trace(d, {})
    assert [str(s) for s in trace.steps] == ["derive-false {p, q}"]
    assert trace.limit == Interpretation({p: F, q: F})


def test_trace_alternates_true_and_false_steps():
    d = parse_formula("{p <- o. q <- q & p.}")
    trace = wf_trace(d, {o: T})
    assert [str(s) for s in trace.steps] == ["derive-true {p}", "derive-false {q}"]
    assert trace.terminal
    assert wf_model(d, {o: F}) == Interpretation({o: F, p: F, q: F})


def test_odd_loop_stays_unknown():
    d = parse_formula("{p <- ~p.}")
    assert wf_model(d, {})[p] is U
    assert not is_total_in(d, {})
    d2 = parse_formula("{p <- ~q. q <- ~p.}")
    assert wf_model(d2, {}) == Interpretation({p: U, q: U})


def test_greatest_unfounded_set_respects_within():
    d = parse_formula("{p <- q. q <- p. r <- o.}")
    start = initial_interpretation(d, {o: T})
    assert greatest_unfounded_set(d, start) == {p, q}
    assert greatest_unfounded_set(d, start, within=[p]) == frozenset()


def test_initial_interpretation_contract():
    d = parse_formula("{p <- o.}")
    with pytest.raises(UnknownAtomError):
        initial_interpretation(d, {})
    with pytest.raises(ValueError):
        initial_interpretation(d, {o: U})


def test_definition_truth_is_model_membership():
    d = parse_formula("{p <- o.}")
    assert truth(d, Interpretation({o: T, p: T})) is T
    assert truth(d, Interpretation({o: T, p: F})) is F
    assert truth(parse_formula("{p <- ~p.}"), Interpretation({p: T})) is F


def test_validity_and_counter_models():
    assert is_valid(parse_sequent("{p <- q. q <- p.} |- ~p"))
    assert not is_valid(parse_sequent("{p <- true.} |- ~p"))
    cm = find_counter_model(parse_sequent("p | q |- p"))
    assert cm == Interpretation({p: F, q: T})
    assert is_valid(parse_sequent("{p <- ~p.} |-"))


def test_models_of_example_theories():
    assert list(models(parse_theory("{p <- q. q <- p.}"))) == [Interpretation({p: F, q: F})]
    assert find_model(parse_theory("{p <- ~p.}")) is None
    assert find_model(parse_theory("o. {p <- o.}")) == Interpretation({o: T, p: T})


def test_totality_in_context():
    d = parse_formula("{q <- ~q & o.}")
    assert not is_total(d)
    assert totality_witness(d) == Interpretation({o: T})
    assert is_total(d, parse_theory("~o."))


def test_enumeration_bound():
    with pytest.raises(ResourceLimitError):
        list(enumerate_interpretations([Atom(f"a{i}") for i in range(MAX_ENUM_ATOMS + 1)]))


# ---------------------------------------------------------------------------
# properties against the reference implementations


def _plain(interp):
    return {a: int(v) for a, v in interp.items()}


@given(formulas(), interpretations())
def test_eval3_matches_reference(f, i):
    assert int(eval3(f, i)) == oracles.kleene(f, _plain(i))


@given(definitions(VOCAB[:4]), st.data())
def test_wf_model_matches_reference(d, data):
    opens = {a: data.draw(st.sampled_from((F, T))) for a in d.open}
    assert _plain(wf_model(d, opens)) == oracles.wf_limit(d, _plain(opens))


@given(definitions(VOCAB[:4]), st.data(), st.integers(0, 2**32))
def test_random_policies_reach_the_same_limit(d, data, seed):
    opens = {a: data.draw(st.sampled_from((F, T))) for a in d.open}
    limit = wf_trace(d, opens, RandomPolicy(random.Random(seed))).limit
    assert limit == wf_model(d, opens)


@given(sequents())
def test_validity_matches_reference(s):
    assert is_valid(s) == oracles.valid(s)
    cm = find_counter_model(s)
    if cm is not None:
        assert is_counter_model(cm, s)


def test_truth_value_enum_is_ordered_like_the_reference():
    assert [int(v) for v in TruthValue] == [oracles.FALSE, oracles.UNKNOWN, oracles.TRUE]
    assert Sequent() == parse_sequent("|-")

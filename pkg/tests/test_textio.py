import os
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import DATA
from strategies import definitions, formulas, sequents
from pcid.errors import ArityError, ParseError
from pcid.generate import random_proof_tree
from pcid.syntax import BOT, TOP, And, Atom, Not, Or, Sequent, normalize
from pcid.textio import (
    format_formula,
    format_interpretation,
    format_proof,
    format_sequent,
    format_theory,
    parse_assignment,
    parse_atom_set,
    parse_formula,
    parse_proof,
    parse_sequent,
    parse_theory,
)

o, p, q, r = (Atom(n) for n in "opqr")


@pytest.mark.parametrize(
    "text, expected",
    [
        ("p & q | r", Or(And(p, q), r)),
        ("~p & q", And(Not(p), q)),
        ("p & q & r", And(And(p, q), r)),
        ("p | (q | r)", Or(p, Or(q, r))),
        ("p => q", Or(Not(p), q)),
        ("true | false", Or(TOP, BOT)),
        ("% comment\n p", p),
    ],
)
def test_precedence_and_associativity(text, expected):
    assert parse_formula(text) == expected


def test_implication_is_right_associative():
    assert parse_formula("p => q => r") == parse_formula("p => (q => r)")


def test_definitions_merge_repeated_heads():
    assert parse_formula("{p <- q. p <- r. q <- o.}") == normalize([(p, q), (p, r), (q, o)])
    assert format_formula(parse_formula("{}")) == "{}"


def test_theory_statement_terminators():
    t = parse_theory("p | q. {p <- q.} ~q.")
    assert len(t) == 3
    with pytest.raises(ParseError):
        parse_theory("p q")


def test_sequent_forms():
    assert parse_sequent("|-") == Sequent()
    assert parse_sequent("p, q |- r.") == Sequent([p, q], [r])
    assert format_sequent(Sequent([q, p], [])) == "p, q |-"
    assert format_sequent(Sequent([], [p])) == "|- p"


@pytest.mark.parametrize(
    "text, message, position",
    [
        ("p &", "expected a formula", "1:4"),
        ("p & (q", "expected ')'", "1:7"),
        ("{p <- q", "expected '.'", "1:8"),
        ("p $ q", "unexpected character", "1:3"),
        ("p__r", "generated atom", "1:1"),
        ("{p <- {q <- o.}.}", "may not contain definitions", "1:7"),
    ],
)
def test_formula_errors_carry_positions(text, message, position):
    with pytest.raises(ParseError) as info:
        parse_formula(text)
    assert message in info.value.message
    assert str(info.value.span) == position


def test_generated_atoms_need_opt_in():
    assert parse_formula("p__r", allow_generated=True) == p.renamed("renamed-pos")
    assert parse_atom_set("{p, q__d}") == {p, Atom("q__d")}


def test_assignments():
    assert parse_assignment("o=T, p=0") == {o: True, p: False}
    with pytest.raises(ValueError):
        parse_assignment("o=X")
    assert format_interpretation({}) == ""


def test_golden_proof_document_round_trips():
    with open(os.path.join(DATA, "aproof.lpidproof"), encoding="utf-8") as fh:
        text = fh.read()
    tree = parse_proof(text)
    assert tree.size() == 11
    assert parse_proof(format_proof(tree)) == tree


@pytest.mark.parametrize(
    "doc, error, position",
    [
        ("lpid-proof 2\n", ParseError, "1:1"),
        ("lpid-proof 1\nnode frob\n  sequent: p |- p\n", ParseError, "2:6"),
        ("lpid-proof 1\nnode axiom-id\n  sequent: p |- p &\n  formula: p\n", ParseError, "3:20"),
        ("lpid-proof 1\nnode not-r\n  sequent: |- ~p\n", ParseError, "2:1"),
        (
            "lpid-proof 1\nnode axiom-id\n  sequent: p |- p\n  formula: p\n"
            "  node axiom-id\n    sequent: p |- p\n    formula: p\n",
            ArityError,
            "2:1",
        ),
        (
            "lpid-proof 1\nnode def-l\n  sequent: p, {p <- o.} |-\n  formula: {p <- o.}\n"
            "  atom: p\n  uset: {p}\n",
            ArityError,
            "2:1",
        ),
    ],
)
def test_proof_document_errors(doc, error, position):
    with pytest.raises(error) as info:
        parse_proof(doc)
    assert str(info.value.span) == position


@given(formulas())
def test_formula_round_trip(f):
    assert parse_formula(format_formula(f)) == f


@given(st.lists(formulas() | definitions(), max_size=4))
def test_theory_round_trip(theory):
    assert parse_theory(format_theory(theory)) == theory


@given(sequents())
def test_sequent_round_trip(s):
    assert parse_sequent(format_sequent(s)) == s


@given(st.integers(0, 2**32), st.integers(0, 3))
def test_proof_round_trip(seed, depth):
    tree = random_proof_tree(random.Random(seed), depth)
    text = format_proof(tree)
    assert parse_proof(text) == tree
    assert format_proof(parse_proof(text)) == text

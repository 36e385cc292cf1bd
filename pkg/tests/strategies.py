from hypothesis import strategies as st

from pcid.semantics import F, Interpretation, T, U
from pcid.syntax import BOT, TOP, And, Atom, Not, Or, Sequent, normalize

VOCAB = [Atom(n) for n in "o p q r s".split()]


def formulas(vocab=VOCAB, max_leaves=8, constants=True):
    leaves = st.sampled_from(vocab)
    if constants:
        leaves = leaves | st.sampled_from([TOP, BOT])
    return st.recursive(
        leaves,
        lambda sub: st.builds(Not, sub) | st.builds(And, sub, sub) | st.builds(Or, sub, sub),
        max_leaves=max_leaves,
    )


@st.composite
def definitions(draw, vocab=VOCAB, max_rules=4):
    heads = draw(st.lists(st.sampled_from(vocab), min_size=1, max_size=max_rules))
    bodies = [draw(formulas(vocab, max_leaves=5)) for _ in heads]
    return normalize(zip(heads, bodies))


@st.composite
def interpretations(draw, vocab=VOCAB, values=(F, U, T)):
    return Interpretation({a: draw(st.sampled_from(values)) for a in vocab})


@st.composite
def sequents(draw, vocab=VOCAB[:4], with_definitions=True):
    parts = formulas(vocab, max_leaves=5)
    if with_definitions:
        parts = parts | definitions(vocab[:3], max_rules=2)
    left = draw(st.lists(parts, max_size=3))
    right = draw(st.lists(parts, max_size=2))
    return Sequent(left, right)

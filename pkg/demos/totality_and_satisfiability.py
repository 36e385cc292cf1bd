"""
Totality is as hard as unsatisfiability
=======================================

For a theory ``T`` and a fresh atom ``p``, the one-rule definition
``{p <- ~p & T}`` is total exactly when ``T`` has no model: a model of ``T``
makes the body behave like ``~p``, which leaves ``p`` unknown.
"""

import random

from pcid.generate import atoms, random_formula, random_stratified_definition
from pcid.semantics import find_model, is_total
from pcid.syntax import And, Atom, Definition, Not, conjoin
from pcid.textio import format_formula

rng = random.Random(3)
fresh = Atom("fresh")
vocab = atoms("a b c")

# %%
# Compare the two verdicts on a handful of small random theories.
for _ in range(6):
    theory = [random_formula(rng, vocab, 1) for _ in range(rng.randint(2, 4))]
    d = Definition(((fresh, And(Not(fresh), conjoin(theory))),))
    sat = find_model(theory) is not None
    shown = "  ".join(format_formula(f) + "." for f in theory)
    print(f"{shown:36} satisfiable={sat!s:5} total={is_total(d)}")
    assert is_total(d) == (not sat)

# %%
# Stratified definitions never recurse through negation and are always total.
d = random_stratified_definition(rng, atoms("p q r"), atoms("o"))
print(format_formula(d), "total:", is_total(d))

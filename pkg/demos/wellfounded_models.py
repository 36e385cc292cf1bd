"""
Well-founded models of definitions
==================================

A definition assigns each defined atom a value by an inductive process that
starts with every defined atom unknown. Two kinds of step refine the current
partial interpretation: an atom whose body is already true becomes true, and
a set of unknown atoms that cannot support each other becomes false.
"""

import random

from pcid.semantics import F, RandomPolicy, T, wf_model, wf_trace
from pcid.textio import format_interpretation, parse_formula

# %%
# A positive loop has nothing to start from, so both atoms are falsified in
# one step.
loop = parse_formula("{p <- q. q <- p.}")
for step in wf_trace(loop, {}).steps:
    print(step, "->", format_interpretation(step.after))

# %%
# With an open atom ``o`` the process can interleave both kinds of step.
d = parse_formula("{p <- o. q <- q & p.}")
o = next(iter(d.open))
for value in (T, F):
    trace = wf_trace(d, {o: value})
    print(f"o={value}:", ", ".join(str(s) for s in trace.steps))

# %%
# The order of steps does not matter: random policies reach the same limit.
limits = {wf_trace(d, {o: T}, RandomPolicy(random.Random(seed))).limit for seed in range(20)}
print(len(limits), "distinct limit(s):", format_interpretation(limits.pop()))

# %%
# Recursion through negation can leave atoms unknown. Such a definition has
# no model for that open interpretation.
odd = parse_formula("{p <- ~q. q <- ~p.}")
print(format_interpretation(wf_model(odd, {})))

"""
Proving sequents and checking proofs
====================================

``prove`` either returns a proof tree that the independent checker accepts,
a counter-model, or a note that the sequent falls outside the fragment where
the search is complete.
"""

from pcid.calculus import check_proof
from pcid.prover import build_reduction_tree, prove
from pcid.textio import format_interpretation, format_proof, parse_sequent

# %%
# Backward reduction first breaks connectives apart. Each leaf keeps only
# atoms and definitions.
goal = parse_sequent("o, {p <- o. q <- q & p.} |- p & ~q")
for leaf in build_reduction_tree(goal).leaves():
    print("leaf:", leaf)

# %%
# The leaves are closed by replaying the inductive steps of the definition
# as chains of cuts. The result is an ordinary proof document.
outcome = prove(goal)
print(outcome.status, "with", outcome.proof.size(), "nodes")
print(format_proof(outcome.proof)[:400], "...")

# %%
# The checker rebuilds every rule instance from its parameters.
report = check_proof(outcome.proof)
print("accepted:", report.accepted, "| root:", report.root)

# %%
# Invalid sequents come back with a counter-model instead.
outcome = prove(parse_sequent("{p <- true.} |- ~p"))
print(outcome.status, format_interpretation(outcome.counter_model))

# %%
# A definition that must be shown true needs to be total; otherwise the
# prover declines rather than guessing.
outcome = prove(parse_sequent("|- {p <- ~p.}"))
print(outcome.status, "-", outcome.reason)

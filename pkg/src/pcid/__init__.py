"""Reasoning toolkit for propositional logic with inductive definitions.

The public surface re-exports the most used names; the submodules hold the
rest:

``syntax``     formulas, definitions, sequents and renamings
``semantics``  three-valued evaluation, well-founded models, brute-force oracles
``textio``     concrete syntax and the proof document format
``calculus``   sequent calculus rules and the proof checker
``prover``     proof search following the completeness construction
``generate``   seeded random instances for property tests and demos
"""

from .calculus import CheckReport, ProofTree, RuleParams, check_proof, make_rule_instance
from .errors import (
    ArityError,
    ContractError,
    MalformedDefinitionError,
    ParseError,
    PCIDError,
    PolarityError,
    ResourceLimitError,
    SchemaMismatch,
    UnknownAtomError,
    UnknownRuleError,
)
from .prover import ProveOutcome, prove
from .semantics import (
    Interpretation,
    TruthValue,
    eval3,
    find_counter_model,
    find_model,
    is_total,
    is_valid,
    truth,
    wf_model,
    wf_trace,
)
from .syntax import (
    BOT,
    TOP,
    And,
    Atom,
    Definition,
    Not,
    Or,
    Sequent,
    normalize,
)
from .textio import (
    format_formula,
    format_proof,
    format_sequent,
    format_theory,
    parse_formula,
    parse_proof,
    parse_sequent,
    parse_theory,
)

__all__ = [
    "And",
    "ArityError",
    "Atom",
    "BOT",
    "check_proof",
    "CheckReport",
    "ContractError",
    "Definition",
    "eval3",
    "find_counter_model",
    "find_model",
    "format_formula",
    "format_proof",
    "format_sequent",
    "format_theory",
    "Interpretation",
    "is_total",
    "is_valid",
    "make_rule_instance",
    "MalformedDefinitionError",
    "normalize",
    "Not",
    "Or",
    "parse_formula",
    "parse_proof",
    "parse_sequent",
    "parse_theory",
    "ParseError",
    "PCIDError",
    "PolarityError",
    "ProofTree",
    "prove",
    "ProveOutcome",
    "ResourceLimitError",
    "RuleParams",
    "SchemaMismatch",
    "Sequent",
    "TOP",
    "truth",
    "TruthValue",
    "UnknownAtomError",
    "UnknownRuleError",
    "wf_model",
    "wf_trace",
]

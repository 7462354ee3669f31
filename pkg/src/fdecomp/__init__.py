"""Generalized Zeckendorf decompositions driven by a legality function f.

Choosing ``a_n`` in a decomposition forbids the ``f(n)`` terms just below it.
This package builds the unique sequence for such a rule, decomposes integers
over it, synthesizes linear recurrences for periodic rules and computes exact
summand-count distributions.
"""

from .decomp import Decomposition, all_legal_decompositions, check_unique, decompose, is_legal, recompose
from .ffunc import FRule, base_rule, bbin_rule, eval_f, parse_rule, parse_shorthand, serialize_rule
from .fseq import FSequence
from .recsynth import (
    LinearRecurrence,
    minimal_recurrence,
    minimize,
    nonnegative_multiple_search,
    synthesize_recurrence,
    verify_recurrence,
)

__all__ = [
    "Decomposition",
    "FRule",
    "FSequence",
    "LinearRecurrence",
    "all_legal_decompositions",
    "base_rule",
    "bbin_rule",
    "check_unique",
    "decompose",
    "eval_f",
    "is_legal",
    "minimal_recurrence",
    "minimize",
    "nonnegative_multiple_search",
    "parse_rule",
    "parse_shorthand",
    "recompose",
    "serialize_rule",
    "synthesize_recurrence",
    "verify_recurrence",
]

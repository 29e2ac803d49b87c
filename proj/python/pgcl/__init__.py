"""Verifier for concurrent probabilistic GCL.

Thin wrapper over the native module: program/formula parsing, denotational
approximants, scheduler-oracle enumeration, and may/must semi-decision.
"""

from pgcl._core import (
    BudgetExceeded,
    ProgramParseError,
    UnsupportedFormula,
    __version__,
    check,
    det_outcomes,
    gen_set,
    pretty_print,
    refine,
    step_trace,
)

__all__ = [
    "BudgetExceeded",
    "ProgramParseError",
    "UnsupportedFormula",
    "__version__",
    "check",
    "det_outcomes",
    "gen_set",
    "pretty_print",
    "refine",
    "step_trace",
]

"""Exact branch-and-bound solver for low-autocorrelation binary sequences."""

from .bounds import LagBound, PartialState
from .oracle import OracleResult, enumerate_optimal
from .search import (
    ConvergenceRecord,
    SearchConfig,
    SearchResult,
    branch_order,
    child_values,
    count_distinct_incumbent_energies,
    solve,
)
from .sequences import (
    SYMMETRY_GROUP,
    RunLengthError,
    Sequence,
    Spin,
    SymmetryElement,
    apply_symmetry,
    correlations,
    decode_rle,
    encode_rle,
    energy,
    expand_skew,
    is_skew,
    merit_factor,
)
from .symmetry import (
    LexLeaderCheck,
    LexStatus,
    lex_leader_checks,
    lex_leader_satisfied,
    should_check,
    transform_by_template,
)
from .templates import (
    Template,
    build_skew_template,
    build_template,
    template_from_sequence,
)

__version__ = "0.1.0"

__all__ = [
    "ConvergenceRecord",
    "LagBound",
    "LexLeaderCheck",
    "LexStatus",
    "OracleResult",
    "PartialState",
    "RunLengthError",
    "SYMMETRY_GROUP",
    "SearchConfig",
    "SearchResult",
    "Sequence",
    "Spin",
    "SymmetryElement",
    "Template",
    "apply_symmetry",
    "branch_order",
    "build_skew_template",
    "build_template",
    "child_values",
    "correlations",
    "count_distinct_incumbent_energies",
    "decode_rle",
    "encode_rle",
    "energy",
    "enumerate_optimal",
    "expand_skew",
    "is_skew",
    "lex_leader_checks",
    "lex_leader_satisfied",
    "merit_factor",
    "should_check",
    "solve",
    "template_from_sequence",
    "transform_by_template",
    "__version__",
]

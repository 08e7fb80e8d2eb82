"""Adaptive dense linear solver.

``solve(A, B)`` inspects A for band, triangular and symmetric positive
definite structure, solves with the matching factorization, and falls back
to an SVD-based minimum-norm solution when the system is singular or
poorly conditioned.
"""

from .core import (
    Method,
    SolveReport,
    SolverConfig,
    Structure,
    StructureKind,
    Triangle,
    band_element_count,
    from_column_major,
    machine_epsilon,
    norm1,
)
from .detect import BandExtent, classify, detect_banded, detect_triangular, likely_sympd
from .dispatch import SolveOutcome, relative_residual, solve, solve_general
from .errors import (
    ConvergenceError,
    MatrixParseError,
    NotPositiveDefiniteError,
    PoorlyConditionedError,
    SingularError,
    SolverError,
    ValidationError,
)

__version__ = "0.1.0"

__all__ = [
    "BandExtent",
    "ConvergenceError",
    "MatrixParseError",
    "Method",
    "NotPositiveDefiniteError",
    "PoorlyConditionedError",
    "SingularError",
    "SolveOutcome",
    "SolveReport",
    "SolverConfig",
    "SolverError",
    "Structure",
    "StructureKind",
    "Triangle",
    "ValidationError",
    "band_element_count",
    "classify",
    "detect_banded",
    "detect_triangular",
    "from_column_major",
    "likely_sympd",
    "machine_epsilon",
    "norm1",
    "relative_residual",
    "solve",
    "solve_general",
]

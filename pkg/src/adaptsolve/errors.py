"""Exception hierarchy for the solver and its kernels."""

from __future__ import annotations


class SolverError(Exception):
    """Base class for every error raised by :mod:`adaptsolve`."""


class ValidationError(SolverError, ValueError):
    """Input rejected before any numerical work (shape, finiteness, emptiness)."""


class SingularError(SolverError):
    """A factorization met an exactly zero pivot.

    ``column`` is the zero-based index of the first zero pivot. When the
    factorization ran to completion despite the zero pivot, the (singular)
    factor is attached as ``factor`` so callers can still report rcond = 0.
    """

    def __init__(self, column: int, factor=None):
        super().__init__(f"exactly zero pivot in column {column}")
        self.column = column
        self.factor = factor


class NotPositiveDefiniteError(SolverError):
    """Cholesky met a non-positive pivot at zero-based ``column``."""

    def __init__(self, column: int):
        super().__init__(f"matrix is not positive definite (pivot {column} <= 0)")
        self.column = column


class ConvergenceError(SolverError):
    """The Jacobi SVD did not converge within its sweep limit."""


class PoorlyConditionedError(SolverError):
    """rcond fell below the gate and the SVD fallback was disabled."""

    def __init__(self, rcond: float, method=None):
        super().__init__(f"system is poorly conditioned (rcond = {rcond:.6e})")
        self.rcond = rcond
        self.method = method


class MatrixParseError(SolverError, ValueError):
    """Malformed Matrix Market input; ``line`` is 1-based (0 when unknown)."""

    def __init__(self, line: int, reason: str):
        super().__init__(f"line {line}: {reason}")
        self.line = line
        self.reason = reason

"""Shared matrix representation, configuration and report types.

Matrices are plain ``numpy.ndarray`` objects of dtype ``float64`` in
column-major (Fortran) order, so element ``(i, j)`` of an ``m x n`` matrix
lives at flat offset ``i + j*m``. Right-hand sides may be 1-D vectors or
2-D matrices with one system per column.
"""

from __future__ import annotations

import enum
import sys
from dataclasses import dataclass, field

import numpy as np

from .errors import ValidationError

__all__ = [
    "Method",
    "SolveReport",
    "SolverConfig",
    "Structure",
    "StructureKind",
    "Triangle",
    "as_matrix",
    "band_element_count",
    "from_column_major",
    "machine_epsilon",
    "norm1",
]


def machine_epsilon() -> float:
    """Gap between 1.0 and the next representable double (about 2.22e-16)."""
    return sys.float_info.epsilon


EPS = machine_epsilon()


def as_matrix(a, *, copy: bool = False) -> np.ndarray:
    """Return ``a`` as a 2-D float64 Fortran-ordered array.

    1-D input becomes a single column.
    """
    arr = np.asarray(a, dtype=np.float64)
    if arr.ndim == 1:
        arr = arr.reshape(-1, 1)
    if arr.ndim != 2:
        raise ValidationError(f"expected a 1-D or 2-D array, got {arr.ndim}-D")
    if copy:
        return np.array(arr, dtype=np.float64, order="F", copy=True)
    return np.asfortranarray(arr)


def from_column_major(data, n_rows: int, n_cols: int) -> np.ndarray:
    """Build a matrix from a flat column-major sequence of values."""
    flat = np.asarray(data, dtype=np.float64).ravel()
    if flat.size != n_rows * n_cols:
        raise ValidationError(
            f"{flat.size} values cannot fill a {n_rows}x{n_cols} matrix"
        )
    return flat.reshape((n_rows, n_cols), order="F").copy(order="F")


def norm1(a) -> float:
    """Matrix 1-norm: the largest absolute column sum."""
    arr = as_matrix(a)
    if arr.size == 0:
        raise ValidationError("norm1 of an empty matrix is undefined")
    return float(np.abs(arr).sum(axis=0).max())


def band_element_count(n: int, kl: int, ku: int) -> int:
    """Number of positions of an ``n x n`` matrix inside band ``(kl, ku)``."""
    return n * (kl + ku + 1) - kl * (kl + 1) // 2 - ku * (ku + 1) // 2


class Method(str, enum.Enum):
    """Solver path actually used to produce a solution."""

    BANDED_LU = "banded-lu"
    TRIANGULAR_LOWER = "triangular-lower"
    TRIANGULAR_UPPER = "triangular-upper"
    CHOLESKY_SYMPD = "cholesky-sympd"
    GENERAL_LU = "general-lu"
    SVD_FALLBACK = "svd-fallback"

    def __str__(self) -> str:
        return self.value


class Triangle(str, enum.Enum):
    """Which triangle of a square matrix holds its nonzeros."""

    LOWER = "lower"
    UPPER = "upper"

    def __str__(self) -> str:
        return self.value


class StructureKind(str, enum.Enum):
    BANDED = "banded"
    LOWER_TRIANGULAR = "lower-triangular"
    UPPER_TRIANGULAR = "upper-triangular"
    LIKELY_SYMPD = "likely-sympd"
    GENERAL = "general"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class Structure:
    """Detection verdict. ``kl``/``ku`` are set only for banded matrices."""

    kind: StructureKind
    kl: int | None = None
    ku: int | None = None

    @classmethod
    def banded(cls, kl: int, ku: int) -> "Structure":
        return cls(StructureKind.BANDED, kl, ku)

    def __str__(self) -> str:
        if self.kind is StructureKind.BANDED:
            return f"banded(kl={self.kl}, ku={self.ku})"
        return str(self.kind)


@dataclass(frozen=True)
class SolverConfig:
    """Tunables of the adaptive solver.

    Attributes
    ----------
    band_density_limit : float
        Largest fraction of the matrix the band may cover and still be
        treated as banded.
    sympd_tol_multiplier : float
        Symmetry tolerance of the sympd check, in units of machine epsilon.
    rcond_threshold : float
        Systems whose estimated rcond falls below this are poorly conditioned.
    allow_fallback : bool
        Solve poorly conditioned or singular systems via the SVD instead of
        raising :class:`~adaptsolve.errors.PoorlyConditionedError`.
    lsq_cutoff_ratio : float
        Singular values below ``lsq_cutoff_ratio * s_max`` are treated as zero.
    force_method : Method or None
        Skip detection and use this path (the rcond gate still applies).
    """

    band_density_limit: float = 0.25
    sympd_tol_multiplier: float = 100.0
    rcond_threshold: float = field(default=0.5 * EPS)
    allow_fallback: bool = True
    lsq_cutoff_ratio: float = field(default=EPS)
    force_method: Method | None = None

    def __post_init__(self):
        if not 0.0 < self.band_density_limit <= 1.0:
            raise ValidationError("band_density_limit must lie in (0, 1]")
        if not self.sympd_tol_multiplier > 0.0:
            raise ValidationError("sympd_tol_multiplier must be positive")
        if not 0.0 <= self.rcond_threshold < 1.0:
            raise ValidationError("rcond_threshold must lie in [0, 1)")
        if not 0.0 <= self.lsq_cutoff_ratio < 1.0:
            raise ValidationError("lsq_cutoff_ratio must lie in [0, 1)")
        if self.force_method is not None:
            object.__setattr__(self, "force_method", Method(self.force_method))

    @property
    def sympd_tol(self) -> float:
        return self.sympd_tol_multiplier * EPS


@dataclass(frozen=True)
class SolveReport:
    method_used: Method
    rcond: float
    fallback_taken: bool
    relative_residual: float
    effective_rank: int | None = None

    def __str__(self) -> str:
        lines = [
            f"method: {self.method_used}",
            f"rcond: {self.rcond:.6e}",
            f"fallback: {'yes' if self.fallback_taken else 'no'}",
            f"residual: {self.relative_residual:.6e}",
        ]
        if self.effective_rank is not None:
            lines.append(f"rank: {self.effective_rank}")
        return "\n".join(lines)

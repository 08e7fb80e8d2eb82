"""The adaptive solver: detect structure, factor, gate on rcond, fall back to SVD."""

from __future__ import annotations

from dataclasses import dataclass
import numpy as np

from .core import (
    Method,
    SolveReport,
    SolverConfig,
    StructureKind,
    Triangle,
    as_matrix,
)
from .detect import _band_scan, classify
from .errors import (
    NotPositiveDefiniteError,
    PoorlyConditionedError,
    SingularError,
    ValidationError,
)
from .kernels import (
    band_factor,
    band_rcond,
    band_solve,
    cholesky_factor,
    cholesky_rcond,
    cholesky_solve,
    lu_factor,
    lu_rcond,
    lu_solve,
    pack_band,
    svd,
    tri_rcond,
    tri_solve,
)
from .kernels.svd import lsq_from_svd

__all__ = ["SolveOutcome", "relative_residual", "solve", "solve_general"]

_STRUCTURE_METHOD = {
    StructureKind.BANDED: Method.BANDED_LU,
    StructureKind.LOWER_TRIANGULAR: Method.TRIANGULAR_LOWER,
    StructureKind.UPPER_TRIANGULAR: Method.TRIANGULAR_UPPER,
    StructureKind.LIKELY_SYMPD: Method.CHOLESKY_SYMPD,
    StructureKind.GENERAL: Method.GENERAL_LU,
}


@dataclass(frozen=True)
class SolveOutcome:
    x: np.ndarray
    report: SolveReport


def _matrix_norm1(m: np.ndarray) -> float:
    return float(np.abs(m).sum(axis=0).max()) if m.size else 0.0


def relative_residual(a, x, b) -> float:
    """``||A X - B||_1 / (||A||_1 ||X||_1 + ||B||_1)``, or 0 when the denominator is 0."""
    a, x, b = as_matrix(a), as_matrix(x), as_matrix(b)
    denom = _matrix_norm1(a) * _matrix_norm1(x) + _matrix_norm1(b)
    if denom == 0.0:
        return 0.0
    return _matrix_norm1(a @ x - b) / denom


def _validate(a, b) -> tuple[np.ndarray, np.ndarray, bool]:
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.ndim != 2 or a.size == 0:
        raise ValidationError(f"A must be a non-empty 2-D matrix, got shape {a.shape}")
    if b.ndim not in (1, 2) or b.size == 0:
        raise ValidationError(f"B must be a non-empty vector or matrix, got shape {b.shape}")
    if b.shape[0] != a.shape[0]:
        raise ValidationError(f"A has {a.shape[0]} rows but B has {b.shape[0]}")
    if not np.isfinite(a).all():
        raise ValidationError("A contains NaN or Inf")
    if not np.isfinite(b).all():
        raise ValidationError("B contains NaN or Inf")
    return as_matrix(a), as_matrix(b), b.ndim == 1


# Each route returns (method, rcond, deferred solve). The solve is None when the
# factorization hit an exact zero pivot; rcond is then 0.


def _route(a, b, method: Method, config: SolverConfig, band=None):
    if method is Method.BANDED_LU:
        if band is None:
            _, kl, ku = _band_scan(a, 1.0)
            band = (int(kl), int(ku))
        try:
            f = band_factor(pack_band(a, *band))
        except SingularError:
            return method, 0.0, None
        return method, band_rcond(f), lambda: band_solve(f, b)

    if method in (Method.TRIANGULAR_LOWER, Method.TRIANGULAR_UPPER):
        side = Triangle.LOWER if method is Method.TRIANGULAR_LOWER else Triangle.UPPER
        rcond = tri_rcond(a, side)
        if rcond == 0.0:
            return method, 0.0, None
        return method, rcond, lambda: tri_solve(a, b, side)

    if method is Method.CHOLESKY_SYMPD:
        try:
            f = cholesky_factor(a)
        except NotPositiveDefiniteError:
            # not actually sympd: the general path starts again from A
            return _route(a, b, Method.GENERAL_LU, config)
        return method, cholesky_rcond(f), lambda: cholesky_solve(f, b)

    if method is Method.GENERAL_LU:
        try:
            f = lu_factor(a)
        except SingularError:
            return method, 0.0, None
        return method, lu_rcond(f), lambda: lu_solve(f, b)

    raise ValidationError(f"no square-system route for {method}")


def _svd_route(a, b, config: SolverConfig) -> tuple[np.ndarray, float, int]:
    f = svd(a)
    x, rank = lsq_from_svd(f, b, config.lsq_cutoff_ratio)
    rcond = float(f.s[-1] / f.s[0]) if f.s[0] > 0.0 else 0.0
    return x, rcond, rank


def _finish(a, b, is_vector, route, config: SolverConfig) -> SolveOutcome:
    method, rcond, deferred = route
    rank = None
    if deferred is None or not rcond >= config.rcond_threshold:
        if not config.allow_fallback:
            raise PoorlyConditionedError(rcond, method)
        x, _, rank = _svd_route(a, b, config)
        method = Method.SVD_FALLBACK
    else:
        x = deferred()
    report = SolveReport(
        method_used=method,
        rcond=float(rcond),
        fallback_taken=method is Method.SVD_FALLBACK,
        relative_residual=relative_residual(a, x, b),
        effective_rank=rank,
    )
    return SolveOutcome(x[:, 0].copy() if is_vector else x, report)


def solve(a, b, config: SolverConfig | None = None) -> SolveOutcome:
    """Solve ``A X = B`` with the cheapest factorization the structure of A allows.

    Square matrices are tested, in order, for a narrow band, a triangle and
    likely symmetric positive definiteness; the first match picks banded LU,
    substitution or Cholesky, and anything else gets partial-pivoted LU. A
    Cholesky breakdown drops through to LU. If the chosen factorization is
    exactly singular or its rcond estimate is below
    ``config.rcond_threshold``, the minimum-norm least-squares solution from
    the SVD is returned instead (or :class:`PoorlyConditionedError` raised
    when ``config.allow_fallback`` is off). Non-square systems go straight
    to the least-squares solver.

    Raises
    ------
    ValidationError
        Empty, non-finite or mismatched inputs.
    PoorlyConditionedError
        Fallback disabled and the system is singular or poorly conditioned.
    ConvergenceError
        The SVD fallback itself failed.
    """
    config = config or SolverConfig()
    a, b, is_vector = _validate(a, b)

    forced = config.force_method
    if a.shape[0] != a.shape[1] or forced is Method.SVD_FALLBACK:
        # direct least squares; rcond here is the 2-norm ratio s_min / s_max
        x, rcond, rank = _svd_route(a, b, config)
        report = SolveReport(
            Method.SVD_FALLBACK, rcond, True, relative_residual(a, x, b), rank
        )
        return SolveOutcome(x[:, 0].copy() if is_vector else x, report)

    if forced is not None:
        route = _route(a, b, forced, config)
    else:
        structure = classify(a, config)
        method = _STRUCTURE_METHOD[structure.kind]
        band = (structure.kl, structure.ku) if structure.kind is StructureKind.BANDED else None
        route = _route(a, b, method, config, band)
    return _finish(a, b, is_vector, route, config)


def solve_general(a, b, config: SolverConfig | None = None) -> SolveOutcome:
    """The one-size-fits-all baseline: always LU, same rcond gate and fallback."""
    config = config or SolverConfig()
    a, b, is_vector = _validate(a, b)
    if a.shape[0] != a.shape[1]:
        raise ValidationError(f"solve_general needs a square matrix, got {a.shape}")
    return _finish(a, b, is_vector, _route(a, b, Method.GENERAL_LU, config), config)


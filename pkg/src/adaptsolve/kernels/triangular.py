"""Forward and back substitution on triangular matrices (TRTRS/TRCON style)."""

from __future__ import annotations

import numba as nb
import numpy as np

from ..core import Triangle
from ..errors import SingularError, ValidationError
from ._common import rhs_copy, shaped, square_copy
from .condest import inverse_norm1_estimate

__all__ = ["tri_rcond", "tri_solve", "trsm"]


@nb.njit(cache=True)
def trsm(a, b, lower, trans, unit):
    """Overwrite ``b`` with ``op(T)^-1 b`` where T is a triangle of ``a``.

    Only the selected triangle of ``a`` is referenced; with ``unit`` the
    diagonal is taken to be one. ``trans`` solves with the transpose.
    """
    n = a.shape[0]
    for c in range(b.shape[1]):
        if not trans:
            if lower:
                for k in range(n):
                    if not unit:
                        b[k, c] /= a[k, k]
                    bk = b[k, c]
                    if bk != 0.0:
                        for i in range(k + 1, n):
                            b[i, c] -= a[i, k] * bk
            else:
                for k in range(n - 1, -1, -1):
                    if not unit:
                        b[k, c] /= a[k, k]
                    bk = b[k, c]
                    if bk != 0.0:
                        for i in range(k):
                            b[i, c] -= a[i, k] * bk
        else:
            if lower:
                for k in range(n - 1, -1, -1):
                    s = b[k, c]
                    for i in range(k + 1, n):
                        s -= a[i, k] * b[i, c]
                    b[k, c] = s if unit else s / a[k, k]
            else:
                for k in range(n):
                    s = b[k, c]
                    for i in range(k):
                        s -= a[i, k] * b[i, c]
                    b[k, c] = s if unit else s / a[k, k]


@nb.njit(cache=True)
def _tri_norm1(a, lower):
    n = a.shape[0]
    best = 0.0
    for j in range(n):
        s = 0.0
        lo, hi = (j, n) if lower else (0, j + 1)
        for i in range(lo, hi):
            s += abs(a[i, j])
        best = max(best, s)
    return best


def _side(side) -> bool:
    try:
        return Triangle(side) is Triangle.LOWER
    except ValueError as exc:
        raise ValidationError(f"unknown triangle {side!r}") from exc


def _first_zero_diagonal(a: np.ndarray) -> int | None:
    zeros = np.flatnonzero(np.diagonal(a) == 0.0)
    return int(zeros[0]) if zeros.size else None


def tri_solve(a, b, side) -> np.ndarray:
    """Solve ``T x = b`` by substitution, without factorizing.

    ``side`` selects which triangle of ``a`` is used; the other one is never
    read. Lower systems are solved top-down, upper systems bottom-up.

    Raises
    ------
    SingularError
        If a diagonal entry is exactly zero.
    """
    lower = _side(side)
    a = square_copy(a, copy=False)
    zero = _first_zero_diagonal(a)
    if zero is not None:
        raise SingularError(zero)
    x, is_vector = rhs_copy(b, a.shape[0])
    trsm(a, x, lower, False, False)
    return shaped(x, is_vector)


def tri_rcond(a, side) -> float:
    """Reciprocal 1-norm condition estimate of a triangular matrix.

    Returns 0.0 for an exactly singular triangle.
    """
    lower = _side(side)
    a = square_copy(a, copy=False)
    if _first_zero_diagonal(a) is not None:
        return 0.0
    anorm = float(_tri_norm1(a, lower))
    if anorm == 0.0:
        return 0.0

    def solve(x, trans):
        trsm(a, x, lower, trans, False)

    ainvnm = inverse_norm1_estimate(solve, a.shape[0])
    if ainvnm == 0.0 or not np.isfinite(ainvnm):
        return 0.0
    return min(1.0, (1.0 / anorm) / ainvnm)


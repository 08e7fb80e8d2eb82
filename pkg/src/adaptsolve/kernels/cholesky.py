"""Cholesky factorization of symmetric positive definite matrices (POTRF/POTRS/POCON)."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numba as nb
import numpy as np

from ..errors import NotPositiveDefiniteError
from ._common import frozen, rhs_copy, shaped, square_copy
from .condest import inverse_norm1_estimate
from .triangular import trsm

__all__ = ["CholFactor", "cholesky_factor", "cholesky_rcond", "cholesky_solve"]


@dataclass(frozen=True)
class CholFactor:
    """Lower-triangular ``l`` with ``A = l @ l.T``."""

    l: np.ndarray  # noqa: E741
    anorm: float

    @property
    def n(self) -> int:
        return self.l.shape[0]


@nb.njit(cache=True)
def _potrf(a):
    # left-looking, lower triangle only; strict upper is cleared on success
    n = a.shape[0]
    for j in range(n):
        for k in range(j):
            ljk = a[j, k]
            for i in range(j, n):
                a[i, j] -= a[i, k] * ljk
        d = a[j, j]
        if not d > 0.0:
            return j
        d = math.sqrt(d)
        a[j, j] = d
        for i in range(j + 1, n):
            a[i, j] /= d
    for j in range(1, n):
        for i in range(j):
            a[i, j] = 0.0
    return -1


@nb.njit(cache=True)
def _sym_norm1(a):
    # 1-norm of the symmetric matrix whose lower triangle is stored in ``a``
    n = a.shape[0]
    sums = np.zeros(n)
    for j in range(n):
        sums[j] += abs(a[j, j])
        for i in range(j + 1, n):
            v = abs(a[i, j])
            sums[j] += v
            sums[i] += v
    return sums.max()


def cholesky_factor(a) -> CholFactor:
    """Factor ``A = L L^T`` reading only the lower triangle of ``a``.

    Raises
    ------
    NotPositiveDefiniteError
        At the first column whose pivot is not strictly positive.
    """
    work = square_copy(a)
    anorm = float(_sym_norm1(work))
    info = _potrf(work)
    if info >= 0:
        raise NotPositiveDefiniteError(int(info))
    return CholFactor(frozen(work), anorm)


def _potrs(l, b):
    trsm(l, b, True, False, False)
    trsm(l, b, True, True, False)


def cholesky_solve(f: CholFactor, b) -> np.ndarray:
    x, is_vector = rhs_copy(b, f.n)
    _potrs(f.l, x)
    return shaped(x, is_vector)


def cholesky_rcond(f: CholFactor) -> float:
    if f.anorm == 0.0:
        return 0.0

    def solve(x, trans):
        _potrs(f.l, x)

    ainvnm = inverse_norm1_estimate(solve, f.n)
    if ainvnm == 0.0 or not np.isfinite(ainvnm):
        return 0.0
    return min(1.0, (1.0 / f.anorm) / ainvnm)

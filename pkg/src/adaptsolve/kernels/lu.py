"""Dense LU with partial pivoting (GETRF/GETRS/GECON contracts)."""

from __future__ import annotations

from dataclasses import dataclass

import numba as nb
import numpy as np

from ..errors import SingularError
from ._common import frozen, rhs_copy, shaped, square_copy
from .condest import inverse_norm1_estimate
from .triangular import trsm

__all__ = ["LuFactor", "lu_factor", "lu_rcond", "lu_solve"]


@dataclass(frozen=True)
class LuFactor:
    """``P A = L U`` packed in one matrix.

    ``lu`` holds U on and above the diagonal and the multipliers of the unit
    lower factor L below it. Row ``k`` was swapped with row ``pivots[k]``
    at step ``k`` (``pivots[k] >= k``).
    """

    lu: np.ndarray
    pivots: np.ndarray
    anorm: float

    @property
    def n(self) -> int:
        return self.lu.shape[0]

    def permutation(self) -> np.ndarray:
        """Row order ``p`` such that ``A[p] = L @ U``."""
        perm = np.arange(self.n)
        for k, p in enumerate(self.pivots):
            perm[[k, p]] = perm[[p, k]]
        return perm

    def unpack(self) -> tuple[np.ndarray, np.ndarray]:
        lower = np.tril(self.lu, -1) + np.eye(self.n)
        return lower, np.triu(self.lu)


@nb.njit(cache=True)
def _getrf(a, piv):
    n = a.shape[0]
    info = -1
    for k in range(n):
        p = k
        amax = abs(a[k, k])
        for i in range(k + 1, n):
            v = abs(a[i, k])
            if v > amax:
                amax = v
                p = i
        piv[k] = p
        pivot = a[p, k]
        if pivot != 0.0:
            if p != k:
                for j in range(n):
                    t = a[k, j]
                    a[k, j] = a[p, j]
                    a[p, j] = t
            for i in range(k + 1, n):
                a[i, k] /= pivot
        elif info < 0:
            info = k
        for j in range(k + 1, n):
            akj = a[k, j]
            for i in range(k + 1, n):
                a[i, j] -= a[i, k] * akj
    return info


@nb.njit(cache=True)
def _swap_rows(b, piv, reverse):
    n = piv.shape[0]
    for c in range(b.shape[1]):
        if reverse:
            for k in range(n - 1, -1, -1):
                p = piv[k]
                if p != k:
                    t = b[k, c]
                    b[k, c] = b[p, c]
                    b[p, c] = t
        else:
            for k in range(n):
                p = piv[k]
                if p != k:
                    t = b[k, c]
                    b[k, c] = b[p, c]
                    b[p, c] = t


def _getrs(lu, piv, b, trans):
    if trans:
        trsm(lu, b, False, True, False)
        trsm(lu, b, True, True, True)
        _swap_rows(b, piv, True)
    else:
        _swap_rows(b, piv, False)
        trsm(lu, b, True, False, True)
        trsm(lu, b, False, False, False)


def lu_factor(a) -> LuFactor:
    """Factor a square matrix by Gaussian elimination with partial pivoting.

    Ties in the pivot search go to the first row reaching the largest
    magnitude.

    Raises
    ------
    SingularError
        If a pivot is exactly zero. Elimination still runs to the end and the
        singular factor is attached to the exception.
    """
    work = square_copy(a)
    anorm = float(np.abs(work).sum(axis=0).max())
    piv = np.empty(work.shape[0], dtype=np.int64)
    info = _getrf(work, piv)
    factor = LuFactor(frozen(work), frozen(piv), anorm)
    if info >= 0:
        raise SingularError(int(info), factor)
    return factor


def lu_solve(f: LuFactor, b) -> np.ndarray:
    """Solve ``A x = b``: row swaps, forward substitution with L, back with U."""
    x, is_vector = rhs_copy(b, f.n)
    _getrs(f.lu, f.pivots, x, False)
    return shaped(x, is_vector)


def lu_rcond(f: LuFactor) -> float:
    """Estimated ``1 / (||A||_1 ||A^-1||_1)``; 0.0 for a singular factor."""
    if f.anorm == 0.0 or np.any(np.diagonal(f.lu) == 0.0):
        return 0.0

    def solve(x, trans):
        _getrs(f.lu, f.pivots, x, trans)

    ainvnm = inverse_norm1_estimate(solve, f.n)
    if ainvnm == 0.0 or not np.isfinite(ainvnm):
        return 0.0
    return min(1.0, (1.0 / f.anorm) / ainvnm)

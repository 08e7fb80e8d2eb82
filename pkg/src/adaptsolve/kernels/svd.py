"""One-sided Jacobi SVD and the minimum-norm least-squares solver built on it."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numba as nb
import numpy as np

from ..core import EPS, as_matrix
from ..errors import ConvergenceError, ValidationError
from ._common import frozen

__all__ = ["MAX_SWEEPS", "SvdFactor", "lsq_from_svd", "lsq_min_norm", "svd"]

MAX_SWEEPS = 30


@dataclass(frozen=True)
class SvdFactor:
    """Thin SVD ``A = u @ diag(s) @ v.T`` with ``s`` descending."""

    u: np.ndarray
    s: np.ndarray
    v: np.ndarray

    @property
    def rank_max(self) -> int:
        return self.s.shape[0]


@nb.njit(cache=True)
def _jacobi_sweeps(w, v, tol, max_sweeps, negligible):
    """Orthogonalize the columns of ``w`` in place; returns sweeps used or -1.

    A column whose squared norm is at most ``negligible`` and which still
    needs a rotation is pure rounding noise; it is set to zero instead,
    since rotating such columns against each other never settles.
    """
    m, n = w.shape
    for sweep in range(max_sweeps):
        rotated = False
        for p in range(n - 1):
            for q in range(p + 1, n):
                alpha = 0.0
                beta = 0.0
                gamma = 0.0
                for i in range(m):
                    wp = w[i, p]
                    wq = w[i, q]
                    alpha += wp * wp
                    beta += wq * wq
                    gamma += wp * wq
                if gamma == 0.0 or abs(gamma) <= tol * math.sqrt(alpha) * math.sqrt(beta):
                    continue
                rotated = True
                if min(alpha, beta) <= negligible:
                    k = p if alpha <= beta else q
                    for i in range(m):
                        w[i, k] = 0.0
                    continue
                zeta = (beta - alpha) / (2.0 * gamma)
                if abs(zeta) > 1e150:
                    t = 0.5 / zeta
                else:
                    t = math.copysign(1.0, zeta) / (abs(zeta) + math.sqrt(1.0 + zeta * zeta))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = c * t
                for i in range(m):
                    wp = w[i, p]
                    wq = w[i, q]
                    w[i, p] = c * wp - s * wq
                    w[i, q] = s * wp + c * wq
                for i in range(n):
                    vp = v[i, p]
                    vq = v[i, q]
                    v[i, p] = c * vp - s * vq
                    v[i, q] = s * vp + c * vq
        if not rotated:
            return sweep + 1
    return -1


def _complete_orthonormal(u: np.ndarray, missing: np.ndarray) -> None:
    # replace the columns flagged in ``missing`` by unit vectors orthogonal to the rest,
    # each time taking the unit basis vector with the largest orthogonal residual
    m = u.shape[0]
    have = ~missing
    for k in np.flatnonzero(missing):
        basis = u[:, have]
        resid = np.eye(m) - basis @ basis.T
        e = resid[:, np.argmax(np.einsum("ij,ij->j", resid, resid))].copy()
        e -= basis @ (basis.T @ e)
        u[:, k] = e / np.linalg.norm(e)
        have[k] = True


def _svd_tall(a: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    m, n = a.shape
    w = np.array(a, dtype=np.float64, order="F", copy=True)
    v = np.eye(n, order="F")
    tol = max(m, n) * EPS
    negligible = (EPS * np.linalg.norm(w)) ** 2
    if _jacobi_sweeps(w, v, tol, MAX_SWEEPS, negligible) < 0:
        raise ConvergenceError(f"Jacobi SVD did not converge in {MAX_SWEEPS} sweeps")
    s = np.sqrt(np.einsum("ij,ij->j", w, w))
    order = np.argsort(-s, kind="stable")
    s, w, v = s[order], w[:, order], v[:, order]
    zero = s == 0.0
    u = np.zeros((m, n), order="F")
    u[:, ~zero] = w[:, ~zero] / s[~zero]
    if zero.any():
        _complete_orthonormal(u, zero)
    return u, s, np.asfortranarray(v)


def svd(a) -> SvdFactor:
    """Thin SVD by one-sided (Hestenes) Jacobi rotations.

    Column pairs are rotated until every pair is orthogonal to within
    ``max(m, n) * eps`` relative to the column norms. Wide matrices are
    handled through their transpose.

    Raises
    ------
    ConvergenceError
        When rotations are still needed after ``MAX_SWEEPS`` sweeps.
    """
    arr = as_matrix(a)
    if arr.size == 0:
        raise ValidationError("cannot take the SVD of an empty matrix")
    if arr.shape[0] >= arr.shape[1]:
        u, s, v = _svd_tall(arr)
    else:
        v, s, u = _svd_tall(arr.T)
    return SvdFactor(frozen(u), frozen(s), frozen(v))


def lsq_min_norm(a, b, cutoff_ratio: float = EPS) -> tuple[np.ndarray, int]:
    """Minimum-norm least-squares solution of ``A x = b`` via the pseudo-inverse.

    Singular values at or below ``cutoff_ratio * s_max`` are treated as zero.

    Returns
    -------
    x : ndarray
        Shaped like ``b`` with ``n`` rows in place of ``m``.
    rank : int
        Number of singular values kept.
    """
    arr = as_matrix(a)
    rhs = np.asarray(b, dtype=np.float64)
    is_vector = rhs.ndim == 1
    rhs2 = as_matrix(rhs)
    if rhs2.shape[0] != arr.shape[0]:
        raise ValidationError(
            f"right-hand side has {rhs2.shape[0]} rows, expected {arr.shape[0]}"
        )
    x, rank = lsq_from_svd(svd(arr), rhs2, cutoff_ratio)
    return (x[:, 0].copy() if is_vector else x), rank


def lsq_from_svd(f: SvdFactor, rhs: np.ndarray, cutoff_ratio: float = EPS):
    """Apply the truncated pseudo-inverse held in ``f`` to the matrix ``rhs``."""
    keep = (f.s > cutoff_ratio * f.s[0]) & (f.s > 0.0)
    rank = int(keep.sum())
    coeffs = (f.u[:, keep].T @ rhs) / f.s[keep][:, None]
    return np.asfortranarray(f.v[:, keep] @ coeffs), rank

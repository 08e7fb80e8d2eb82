"""Structure detectors for square column-major matrices.

Each detector is a single pass that stops at the first element which rules
its structure out, so a matrix without special structure costs almost
nothing to classify. The loop kernels are compiled with numba; their pure
Python originals (``kernel.py_func``) accept any object exposing ``shape``
and ``[i, j]`` indexing, which is how tests count element reads.
"""

from __future__ import annotations

from typing import NamedTuple

import numba as nb
import numpy as np

from .core import (
    SolverConfig,
    Structure,
    StructureKind,
    Triangle,
    as_matrix,
    machine_epsilon,
)
from .errors import ValidationError

__all__ = [
    "BandExtent",
    "classify",
    "detect_banded",
    "detect_triangular",
    "likely_sympd",
]


class BandExtent(NamedTuple):
    kl: int  # sub-diagonals
    ku: int  # super-diagonals


@nb.njit(cache=True)
def _band_scan(a, density_limit):
    n = a.shape[0]
    total = float(n) * float(n)
    kl = 0
    ku = 0
    for j in range(n):
        # first nonzero from the top; rows closer than ku cannot widen the band
        for i in range(0, j - ku):
            if a[i, j] != 0.0:
                ku = j - i
                break
        # last nonzero from the bottom
        for i in range(n - 1, j + kl, -1):
            if a[i, j] != 0.0:
                kl = i - j
                break
        count = n * (kl + ku + 1) - kl * (kl + 1) // 2 - ku * (ku + 1) // 2
        if count / total > density_limit:
            return False, kl, ku
    return True, kl, ku


@nb.njit(cache=True)
def _triangle_scan(a):
    # 0: neither, 1: lower, 2: upper
    n = a.shape[0]
    lower = True
    for j in range(1, n):
        for i in range(j):
            if a[i, j] != 0.0:
                lower = False
                break
        if not lower:
            break
    if lower:
        return 1
    for j in range(n - 1):
        for i in range(j + 1, n):
            if a[i, j] != 0.0:
                return 0
    return 2


@nb.njit(cache=True)
def _sympd_scan(a, tol):
    n = a.shape[0]
    diag = np.empty(n)
    max_diag = 0.0
    for j in range(n):
        d = a[j, j]
        if d <= 0.0:
            return False
        if d > max_diag:
            max_diag = d
        diag[j] = d
    for j in range(n - 1):
        for i in range(j + 1, n):
            a_ij = a[i, j]
            a_ji = a[j, i]
            abs_ij = abs(a_ij)
            abs_ji = abs(a_ji)
            delta = abs(a_ij - a_ji)
            if delta > tol and delta > tol * max(abs_ij, abs_ji):
                return False
            if abs_ij >= max_diag:
                return False
            if abs_ij + abs_ji >= diag[i] + diag[j]:
                return False
    return True


def _square(a) -> np.ndarray:
    arr = as_matrix(a)
    if arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
        raise ValidationError(f"expected a non-empty square matrix, got {arr.shape}")
    return arr


def detect_banded(a, density_limit: float = 0.25) -> BandExtent | None:
    """Tightest band ``(kl, ku)`` holding every nonzero of ``a``.

    Returns None as soon as the band seen so far would cover more than
    ``density_limit`` of the matrix. Diagonal matrices give ``(0, 0)``.
    """
    found, kl, ku = _band_scan(_square(a), float(density_limit))
    return BandExtent(int(kl), int(ku)) if found else None


def detect_triangular(a) -> Triangle | None:
    """Exact-zero triangle test; lower is tried first, so diagonals report LOWER."""
    verdict = _triangle_scan(_square(a))
    if verdict == 1:
        return Triangle.LOWER
    if verdict == 2:
        return Triangle.UPPER
    return None


def likely_sympd(a, tol_multiplier: float = 100.0) -> bool:
    """Cheap necessary-condition test for symmetric positive definiteness.

    Checks, stopping at the first failure: a strictly positive diagonal;
    symmetry up to ``tol_multiplier * eps`` in both absolute and relative
    terms; no off-diagonal magnitude reaching the largest diagonal entry;
    and ``|a_ij| + |a_ji| < a_ii + a_jj`` for every pair. Passing does not
    prove definiteness, so callers must handle a failing Cholesky.
    """
    return bool(_sympd_scan(_square(a), tol_multiplier * machine_epsilon()))


def classify(a, config: SolverConfig | None = None) -> Structure:
    """First structure found in the order banded, triangular, likely-sympd."""
    config = config or SolverConfig()
    arr = _square(a)
    found, kl, ku = _band_scan(arr, float(config.band_density_limit))
    if found:
        return Structure.banded(int(kl), int(ku))
    tri = _triangle_scan(arr)
    if tri == 1:
        return Structure(StructureKind.LOWER_TRIANGULAR)
    if tri == 2:
        return Structure(StructureKind.UPPER_TRIANGULAR)
    if _sympd_scan(arr, config.sympd_tol):
        return Structure(StructureKind.LIKELY_SYMPD)
    return Structure(StructureKind.GENERAL)

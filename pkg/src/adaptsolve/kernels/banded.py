"""Band storage and banded LU (GBTRF/GBTRS/GBCON contracts).

Band storage follows LAPACK: an ``(2*kl + ku + 1) x n`` array ``ab`` with
``A[i, j]`` at ``ab[kl + ku + i - j, j]``. The top ``kl`` rows are left
free for the fill-in that row interchanges create during factorization.
"""

from __future__ import annotations

from dataclasses import dataclass

import numba as nb
import numpy as np

from ..errors import SingularError, ValidationError
from ._common import frozen, rhs_copy, shaped, square_copy
from .condest import inverse_norm1_estimate

__all__ = [
    "BandFactor",
    "BandedStorage",
    "band_factor",
    "band_rcond",
    "band_solve",
    "pack_band",
]


@dataclass(frozen=True)
class BandedStorage:
    ab: np.ndarray
    kl: int
    ku: int

    @property
    def n(self) -> int:
        return self.ab.shape[1]

    def unpack(self) -> np.ndarray:
        """Dense matrix holding the band (fill rows are ignored)."""
        return _unpack(self.ab, self.kl, self.ku)

    def norm1(self) -> float:
        rows = self.ab[self.kl :, :]
        return float(np.abs(rows).sum(axis=0).max()) if self.n else 0.0


@dataclass(frozen=True)
class BandFactor:
    """Banded LU: U occupies ``kl + ku`` super-diagonals, multipliers sit below."""

    ab: np.ndarray
    pivots: np.ndarray
    kl: int
    ku: int
    anorm: float

    @property
    def n(self) -> int:
        return self.ab.shape[1]


def _unpack(ab, kl, ku):
    n = ab.shape[1]
    kv = kl + ku
    a = np.zeros((n, n), order="F")
    for j in range(n):
        lo, hi = max(0, j - ku), min(n, j + kl + 1)
        a[lo:hi, j] = ab[kv + lo - j : kv + hi - j, j]
    return a


def _pack(a, kl, ku):
    n = a.shape[0]
    kv = kl + ku
    ab = np.zeros((2 * kl + ku + 1, n), order="F")
    # one diagonal (offset d = i - j) per storage row
    for d in range(-ku, kl + 1):
        if d >= 0:
            ab[kv + d, : n - d] = np.diagonal(a, -d)
        else:
            ab[kv + d, -d:] = np.diagonal(a, -d)
    return ab


def pack_band(a, kl: int, ku: int) -> BandedStorage:
    """Copy the band ``(kl, ku)`` of ``a`` into LAPACK band storage.

    Elements outside the band are never read.
    """
    a = square_copy(a, copy=False)
    n = a.shape[0]
    if not (0 <= kl < max(n, 1) and 0 <= ku < max(n, 1)):
        raise ValidationError(f"band ({kl}, {ku}) does not fit a {n}x{n} matrix")
    return BandedStorage(_pack(a, int(kl), int(ku)), int(kl), int(ku))


@nb.njit(cache=True)
def _gbtf2(ab, kl, ku, piv):
    n = ab.shape[1]
    kv = ku + kl
    info = -1
    for j in range(ku + 1, min(kv, n)):
        for i in range(kv - j, kl):
            ab[i, j] = 0.0
    ju = 0
    for j in range(n):
        if j + kv < n:
            for i in range(kl):
                ab[i, j + kv] = 0.0
        km = min(kl, n - 1 - j)
        jp = 0
        amax = abs(ab[kv, j])
        for r in range(1, km + 1):
            v = abs(ab[kv + r, j])
            if v > amax:
                amax = v
                jp = r
        piv[j] = jp + j
        if ab[kv + jp, j] != 0.0:
            ju = max(ju, min(j + ku + jp, n - 1))
            if jp != 0:
                for c in range(ju - j + 1):
                    t = ab[kv + jp - c, j + c]
                    ab[kv + jp - c, j + c] = ab[kv - c, j + c]
                    ab[kv - c, j + c] = t
            if km > 0:
                pivot = ab[kv, j]
                for r in range(1, km + 1):
                    ab[kv + r, j] /= pivot
                for c in range(1, ju - j + 1):
                    y = ab[kv - c, j + c]
                    if y != 0.0:
                        for r in range(1, km + 1):
                            ab[kv + r - c, j + c] -= ab[kv + r, j] * y
        elif info < 0:
            info = j
    return info


@nb.njit(cache=True)
def _gbtrs(ab, kl, ku, piv, b, trans):
    n = ab.shape[1]
    kd = kl + ku
    for c in range(b.shape[1]):
        if not trans:
            if kl > 0:
                for j in range(n - 1):
                    lm = min(kl, n - 1 - j)
                    p = piv[j]
                    if p != j:
                        t = b[p, c]
                        b[p, c] = b[j, c]
                        b[j, c] = t
                    bj = b[j, c]
                    if bj != 0.0:
                        for r in range(1, lm + 1):
                            b[j + r, c] -= ab[kd + r, j] * bj
            for j in range(n - 1, -1, -1):
                b[j, c] /= ab[kd, j]
                bj = b[j, c]
                if bj != 0.0:
                    for i in range(max(0, j - kd), j):
                        b[i, c] -= ab[kd + i - j, j] * bj
        else:
            for j in range(n):
                s = b[j, c]
                for i in range(max(0, j - kd), j):
                    s -= ab[kd + i - j, j] * b[i, c]
                b[j, c] = s / ab[kd, j]
            if kl > 0:
                for j in range(n - 2, -1, -1):
                    lm = min(kl, n - 1 - j)
                    s = b[j, c]
                    for r in range(1, lm + 1):
                        s -= ab[kd + r, j] * b[j + r, c]
                    b[j, c] = s
                    p = piv[j]
                    if p != j:
                        t = b[p, c]
                        b[p, c] = b[j, c]
                        b[j, c] = t


def band_factor(storage: BandedStorage) -> BandFactor:
    """LU of a banded matrix with row swaps limited to ``kl`` rows below.

    Raises
    ------
    SingularError
        On an exactly zero pivot (the completed factor is attached).
    """
    work = np.array(storage.ab, dtype=np.float64, order="F", copy=True)
    piv = np.empty(storage.n, dtype=np.int64)
    info = _gbtf2(work, storage.kl, storage.ku, piv)
    factor = BandFactor(
        frozen(work), frozen(piv), storage.kl, storage.ku, storage.norm1()
    )
    if info >= 0:
        raise SingularError(int(info), factor)
    return factor


def band_solve(f: BandFactor, b) -> np.ndarray:
    x, is_vector = rhs_copy(b, f.n)
    _gbtrs(f.ab, f.kl, f.ku, f.pivots, x, False)
    return shaped(x, is_vector)


def band_rcond(f: BandFactor) -> float:
    if f.anorm == 0.0 or np.any(f.ab[f.kl + f.ku, :] == 0.0):
        return 0.0

    def solve(x, trans):
        _gbtrs(f.ab, f.kl, f.ku, f.pivots, x, trans)

    ainvnm = inverse_norm1_estimate(solve, f.n)
    if ainvnm == 0.0 or not np.isfinite(ainvnm):
        return 0.0
    return min(1.0, (1.0 / f.anorm) / ainvnm)

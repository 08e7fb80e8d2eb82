"""Factorization and solve kernels for each structure the dispatcher knows."""

from .banded import (
    BandedStorage,
    BandFactor,
    band_factor,
    band_rcond,
    band_solve,
    pack_band,
)
from .cholesky import CholFactor, cholesky_factor, cholesky_rcond, cholesky_solve
from .condest import inverse_norm1_estimate
from .lu import LuFactor, lu_factor, lu_rcond, lu_solve
from .svd import SvdFactor, lsq_min_norm, svd
from .triangular import tri_rcond, tri_solve

__all__ = [
    "BandFactor",
    "BandedStorage",
    "CholFactor",
    "LuFactor",
    "SvdFactor",
    "band_factor",
    "band_rcond",
    "band_solve",
    "cholesky_factor",
    "cholesky_rcond",
    "cholesky_solve",
    "inverse_norm1_estimate",
    "lsq_min_norm",
    "lu_factor",
    "lu_rcond",
    "lu_solve",
    "pack_band",
    "svd",
    "tri_rcond",
    "tri_solve",
]

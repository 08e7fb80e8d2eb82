"""Helpers shared by the kernel modules."""

from __future__ import annotations

import numpy as np

from ..core import as_matrix
from ..errors import ValidationError


def square_copy(a, copy: bool = True) -> np.ndarray:
    arr = as_matrix(a, copy=copy)
    if arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
        raise ValidationError(f"expected a non-empty square matrix, got {arr.shape}")
    return arr


def rhs_copy(b, n: int) -> tuple[np.ndarray, bool]:
    """Writable Fortran copy of ``b`` as a matrix, plus whether it was a vector."""
    arr = np.asarray(b, dtype=np.float64)
    is_vector = arr.ndim == 1
    out = as_matrix(arr, copy=True)
    if out.shape[0] != n:
        raise ValidationError(f"right-hand side has {out.shape[0]} rows, expected {n}")
    return out, is_vector


def shaped(x: np.ndarray, is_vector: bool) -> np.ndarray:
    return x[:, 0].copy() if is_vector else x


def frozen(arr: np.ndarray) -> np.ndarray:
    arr.flags.writeable = False
    return arr

"""Matrix Market *array* (dense) files.

The accepted layout is::

    %%MatrixMarket matrix array real general
    % optional comment lines
    <rows> <cols>
    <value>            one per line, column-major, rows*cols of them

Coordinate (sparse) files and every other field/symmetry qualifier are
rejected. Values are written with 17 significant digits, which is enough
for ``read_matrix(write_matrix(A))`` to reproduce every finite double.
"""

from __future__ import annotations

import os
import re

import numpy as np

from .core import as_matrix
from .errors import MatrixParseError, ValidationError

__all__ = ["HEADER", "read_matrix", "write_matrix"]

HEADER = "%%MatrixMarket matrix array real general"
_HEADER_TOKENS = HEADER.split()
_REAL = re.compile(r"[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?\Z")


def _parse_real(token: str, line: int) -> float:
    if not _REAL.match(token):
        raise MatrixParseError(line, f"not a real number: {token!r}")
    return float(token)


def read_matrix(path: str | os.PathLike) -> np.ndarray:
    """Read a dense matrix; raises OSError for filesystem trouble."""
    with open(path, encoding="ascii", errors="replace") as fh:
        lines = fh.read().splitlines()

    if not lines:
        raise MatrixParseError(1, "empty file")
    tokens = lines[0].split()
    if tokens != _HEADER_TOKENS:
        if len(tokens) >= 3 and tokens[:3] == _HEADER_TOKENS[:2] + ["coordinate"]:
            raise MatrixParseError(1, "coordinate (sparse) format is not supported")
        raise MatrixParseError(1, f"bad header, expected {HEADER!r}")

    lineno = 1
    body = iter(enumerate(lines[1:], start=2))
    size = None
    for lineno, text in body:
        stripped = text.strip()
        if not stripped or stripped.startswith("%"):
            continue
        size = stripped.split()
        break
    if size is None:
        raise MatrixParseError(lineno, "missing size line")
    if len(size) != 2 or not all(t.isdigit() for t in size):
        raise MatrixParseError(lineno, f"size line must be two integers, got {' '.join(size)!r}")
    rows, cols = (int(t) for t in size)
    if rows <= 0 or cols <= 0:
        raise MatrixParseError(lineno, "dimensions must be positive")

    values: list[float] = []
    expected = rows * cols
    for lineno, text in body:
        stripped = text.strip()
        if not stripped:
            continue
        parts = stripped.split()
        if len(parts) != 1:
            raise MatrixParseError(lineno, "expected one value per line")
        if len(values) == expected:
            raise MatrixParseError(lineno, "value count mismatch: too many values")
        values.append(_parse_real(parts[0], lineno))
    if len(values) != expected:
        raise MatrixParseError(
            lineno, f"value count mismatch: expected {expected}, found {len(values)}"
        )
    return np.array(values, dtype=np.float64).reshape((rows, cols), order="F")


def write_matrix(path: str | os.PathLike, a) -> None:
    """Write ``a`` (a vector is stored as one column)."""
    arr = as_matrix(a)
    if arr.size == 0:
        raise ValidationError(f"refusing to write an empty {arr.shape} matrix")
    if not np.isfinite(arr).all():
        raise ValidationError("only finite values can be written")
    rows, cols = arr.shape
    body = "\n".join(f"{v:.17g}" for v in arr.ravel(order="F"))
    with open(path, "w", encoding="ascii") as fh:
        fh.write(f"{HEADER}\n{rows} {cols}\n{body}\n")

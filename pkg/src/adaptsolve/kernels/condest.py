"""Hager-Higham estimate of ``||A^-1||_1`` from a factorization.

Follows the reverse-communication scheme of LAPACK's DLACN2: a gradient
ascent over sign vectors using solves with ``A`` and ``A^T``, capped at five
iterations, followed by Higham's alternating-sign probe. Every value it
produces is ``||A^-1 x||_1 / ||x||_1`` for some probe ``x``, so the result
never exceeds the true norm.
"""

from __future__ import annotations

from typing import Callable

import numpy as np

__all__ = ["inverse_norm1_estimate"]

ITMAX = 5


def _sign(x: np.ndarray) -> np.ndarray:
    return np.where(x >= 0.0, 1.0, -1.0)


def inverse_norm1_estimate(
    solve: Callable[[np.ndarray, bool], None], n: int
) -> float:
    """Lower bound on ``||A^-1||_1``, usually within a factor of three.

    Parameters
    ----------
    solve : callable
        ``solve(x, trans)`` overwrites the ``(n, 1)`` Fortran array ``x``
        with ``A^-1 x`` (``trans=False``) or ``A^-T x`` (``trans=True``).
    n : int
        Order of ``A``.
    """

    def apply(v: np.ndarray, trans: bool) -> np.ndarray:
        x = np.asfortranarray(v, dtype=np.float64).reshape(n, 1).copy(order="F")
        solve(x, trans)
        return x[:, 0]

    if n == 1:
        return float(abs(apply(np.ones(1), False)[0]))

    x = apply(np.full(n, 1.0 / n), False)
    est = float(np.abs(x).sum())
    xi = _sign(x)
    z = apply(xi, True)
    j = int(np.argmax(np.abs(z)))
    it = 2

    while True:
        e = np.zeros(n)
        e[j] = 1.0
        x = apply(e, False)
        estold = est
        est = float(np.abs(x).sum())
        xi_new = _sign(x)
        if np.array_equal(xi_new, xi) or est <= estold:
            est = max(est, estold)
            break
        xi = xi_new
        z = apply(xi, True)
        jlast = j
        j = int(np.argmax(np.abs(z)))
        if z[jlast] != abs(z[j]) and it < ITMAX:
            it += 1
            continue
        break

    # alternating-sign probe guards against the ascent stalling early
    alt = np.array([(1.0 + i / (n - 1)) * (-1.0) ** i for i in range(n)])
    temp = 2.0 * float(np.abs(apply(alt, False)).sum()) / (3.0 * n)
    return max(est, temp)

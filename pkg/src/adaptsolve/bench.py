"""Random system generators and the standard-vs-adaptive timing harness.

Every generated system is a pure function of ``(seed, size, rep)``. Each
generator shifts the diagonal so the systems are comfortably invertible:
timings should never include the SVD fallback.
"""

from __future__ import annotations

import enum
import math
import time
from dataclasses import dataclass, field

import numpy as np

from .core import EPS
from .dispatch import solve, solve_general

__all__ = [
    "BenchKind",
    "BenchRow",
    "BenchSpec",
    "gen_banded",
    "gen_dense",
    "gen_lower_tri",
    "gen_sympd",
    "generate_system",
    "run_bench",
    "system_rng",
]


def _uniform(rng: np.random.Generator, shape) -> np.ndarray:
    return rng.uniform(-0.5, 0.5, size=shape)


def gen_sympd(n: int, rng: np.random.Generator) -> np.ndarray:
    """``R^T R + I`` with ``R`` uniform in [-0.5, 0.5]."""
    r = np.asfortranarray(_uniform(rng, (n, n)))
    a = np.asfortranarray(r.T @ r)
    a[np.diag_indices(n)] += 1.0
    return a


def gen_banded(n: int, diagonals: int, rng: np.random.Generator) -> np.ndarray:
    """``diagonals`` centred diagonals, uniform entries, main diagonal shifted by the band width."""
    if diagonals < 1 or diagonals % 2 == 0 or diagonals > 2 * n - 1:
        raise ValueError(f"diagonals must be odd and in [1, {2 * n - 1}], got {diagonals}")
    half = (diagonals - 1) // 2
    a = np.zeros((n, n), order="F")
    for d in range(-half, half + 1):
        idx = np.arange(max(0, -d), min(n, n - d))
        a[idx + d, idx] = _uniform(rng, idx.size)
    a[np.diag_indices(n)] += diagonals
    return a


def gen_lower_tri(n: int, rng: np.random.Generator) -> np.ndarray:
    """Uniform lower triangle with the diagonal shifted by ``1 + sqrt(n)``.

    A unit shift alone makes random triangular matrices exponentially
    ill-conditioned in ``n`` (rcond ~ 1e-25 at n = 1000).
    """
    a = np.asfortranarray(np.tril(_uniform(rng, (n, n))))
    a[np.diag_indices(n)] += 1.0 + math.sqrt(n)
    return a


def gen_dense(n: int, rng: np.random.Generator) -> np.ndarray:
    """Uniform entries, diagonal shifted by ``n / 2``."""
    a = np.asfortranarray(_uniform(rng, (n, n)))
    a[np.diag_indices(n)] += n / 2.0
    return a


class BenchKind(str, enum.Enum):
    BANDED5 = "banded"
    LOWER_TRI = "tri"
    SYMPD = "sympd"
    DENSE = "dense"

    def __str__(self) -> str:
        return self.value


def system_rng(seed: int, size: int, rep: int) -> np.random.Generator:
    return np.random.default_rng([seed & (2**64 - 1), size, rep])


def generate_system(kind: BenchKind, n: int, seed: int, rep: int) -> tuple[np.ndarray, np.ndarray]:
    """Matrix of the requested kind and a right-hand side uniform in [0, 1)."""
    rng = system_rng(seed, n, rep)
    kind = BenchKind(kind)
    if kind is BenchKind.BANDED5:
        a = gen_banded(n, 5, rng)
    elif kind is BenchKind.LOWER_TRI:
        a = gen_lower_tri(n, rng)
    elif kind is BenchKind.SYMPD:
        a = gen_sympd(n, rng)
    else:
        a = gen_dense(n, rng)
    return a, rng.uniform(0.0, 1.0, size=n)


@dataclass(frozen=True)
class BenchSpec:
    matrix_kind: BenchKind
    sizes: tuple[int, ...] = (100, 250, 500, 1000)
    reps: int = 1000
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "matrix_kind", BenchKind(self.matrix_kind))
        object.__setattr__(self, "sizes", tuple(int(s) for s in self.sizes))
        if not self.sizes or min(self.sizes) < 2:
            raise ValueError("sizes must be non-empty and each at least 2")
        if self.reps < 1:
            raise ValueError("reps must be at least 1")


@dataclass(frozen=True)
class BenchRow:
    size: int
    mean_standard_s: float
    mean_adaptive_s: float
    max_residual: float = 0.0
    adaptive_methods: tuple[str, ...] = field(default=())

    @property
    def reduction_pct(self) -> float:
        return 100.0 * (1.0 - self.mean_adaptive_s / self.mean_standard_s)


def _timed(fn, a, b):
    t0 = time.perf_counter()
    out = fn(a, b)
    return time.perf_counter() - t0, out


def run_bench(spec: BenchSpec, progress=None) -> list[BenchRow]:
    """Time ``solve_general`` against ``solve`` on identical random systems.

    One untimed warm-up solve precedes each size. The two solvers swap
    running order on alternate repetitions so neither always inherits a
    warm cache. Reported times are arithmetic means over ``spec.reps``.
    """
    rows = []
    for n in spec.sizes:
        a, b = generate_system(spec.matrix_kind, n, spec.seed, 0)
        solve_general(a, b)
        solve(a, b)
        total_std = total_ad = 0.0
        worst = 0.0
        methods: set[str] = set()
        for rep in range(spec.reps):
            a, b = generate_system(spec.matrix_kind, n, spec.seed, rep)
            if rep % 2:
                t_ad, ad = _timed(solve, a, b)
                t_std, std = _timed(solve_general, a, b)
            else:
                t_std, std = _timed(solve_general, a, b)
                t_ad, ad = _timed(solve, a, b)
            total_std += t_std
            total_ad += t_ad
            worst = max(worst, std.report.relative_residual, ad.report.relative_residual)
            methods.add(str(ad.report.method_used))
        if worst > 100 * n * EPS:
            raise RuntimeError(f"n={n}: residual {worst:.3e} exceeds 100*n*eps")
        row = BenchRow(
            n, total_std / spec.reps, total_ad / spec.reps, worst, tuple(sorted(methods))
        )
        rows.append(row)
        if progress is not None:
            progress(row)
    return rows

import numpy as np
import pytest

from adaptsolve import Method, Structure, StructureKind, band_element_count, classify, likely_sympd, solve
from adaptsolve.bench import (
    BenchKind,
    BenchRow,
    BenchSpec,
    gen_banded,
    gen_dense,
    gen_lower_tri,
    gen_sympd,
    generate_system,
    run_bench,
    system_rng,
)
from adaptsolve.core import EPS
from adaptsolve.core import Triangle
from adaptsolve.kernels import lu_factor, lu_solve, tri_solve

SIZES = (10, 50, 100)
SEEDS = range(100)


class TestGenerators:
    def test_sympd_scalar(self):
        rng = np.random.default_rng(3)
        r = np.random.default_rng(3).uniform(-0.5, 0.5)
        assert gen_sympd(1, rng)[0, 0] == r * r + 1.0

    @pytest.mark.parametrize("n", [1, 2, 7, 30])
    def test_sympd_eigenvalues_at_least_one(self, n, rng):
        for _ in range(20):
            a = gen_sympd(n, rng)
            assert np.array_equal(a, a.T)
            assert np.linalg.eigvalsh(a).min() >= 1.0 - 10 * n * EPS

    def test_banded_shape(self, rng):
        a = gen_banded(30, 5, rng)
        i, j = np.indices(a.shape)
        assert not a[np.abs(i - j) > 2].any()
        assert a[np.abs(i - j) <= 2].all()
        off = a - np.diag(np.diag(a))
        assert np.all(np.abs(off) <= 0.5)
        assert np.all(np.diag(a) >= 4.5)

    def test_single_diagonal(self, rng):
        a = gen_banded(40, 1, rng)
        assert np.array_equal(a, np.diag(np.diag(a)))
        assert classify(a) == Structure.banded(0, 0)

    @pytest.mark.parametrize("d", [0, 2, -1, 2 * 6])
    def test_banded_bad_diagonals(self, d, rng):
        with pytest.raises(ValueError):
            gen_banded(6, d, rng)

    def test_full_width_band_allowed(self, rng):
        assert gen_banded(6, 11, rng).all()

    def test_lower_tri_shape(self, rng):
        a = gen_lower_tri(20, rng)
        assert not np.triu(a, 1).any()
        assert np.all(np.abs(np.tril(a, -1)) <= 0.5)

    def test_lower_tri_one_by_one(self, rng):
        # a 1x1 band fills the whole matrix, so the density cut rejects it
        assert classify(gen_lower_tri(1, rng)).kind is StructureKind.LOWER_TRIANGULAR

    def test_dense_not_sympd(self, rng):
        for _ in range(100):
            assert not likely_sympd(gen_dense(20, rng))

    def test_tri_kernel_agrees_with_lu(self, rng):
        a = gen_lower_tri(80, rng)
        b = rng.uniform(size=(80, 1))
        x_tri = tri_solve(a, b, Triangle.LOWER)
        x_lu = lu_solve(lu_factor(a), b)
        assert np.abs(x_tri - x_lu).sum() / np.abs(x_lu).sum() <= 1e-10


class TestDeterminism:
    @pytest.mark.parametrize("kind", list(BenchKind))
    def test_same_inputs_same_system(self, kind):
        a1, b1 = generate_system(kind, 40, 7, 3)
        a2, b2 = generate_system(kind, 40, 7, 3)
        assert np.array_equal(a1, a2) and np.array_equal(b1, b2)

    def test_streams_differ(self):
        base = generate_system(BenchKind.DENSE, 20, 7, 0)[0]
        for other in [(8, 20, 0), (7, 20, 1)]:
            seed, n, rep = other
            assert not np.array_equal(generate_system(BenchKind.DENSE, n, seed, rep)[0], base)

    def test_full_64_bit_seed(self):
        assert system_rng(2**64 - 1, 10, 0).random() == system_rng(2**64 - 1, 10, 0).random()

    def test_rhs_range(self):
        _, b = generate_system(BenchKind.SYMPD, 50, 1, 1)
        assert b.shape == (50,) and np.all((b >= 0) & (b < 1))


def _banded_expected(n):
    # the 5-diagonal band only passes the density cut once n is large enough
    if band_element_count(n, 2, 2) <= 0.25 * n * n:
        return Structure.banded(2, 2)
    return Structure(StructureKind.GENERAL)


def test_small_banded5_is_too_dense():
    assert _banded_expected(10).kind is StructureKind.GENERAL
    assert _banded_expected(50) == Structure.banded(2, 2)


EXPECTED = {
    BenchKind.BANDED5: _banded_expected,
    BenchKind.LOWER_TRI: lambda n: Structure(StructureKind.LOWER_TRIANGULAR),
    BenchKind.SYMPD: lambda n: Structure(StructureKind.LIKELY_SYMPD),
    BenchKind.DENSE: lambda n: Structure(StructureKind.GENERAL),
}


@pytest.mark.parametrize("kind", list(BenchKind))
@pytest.mark.parametrize("n", SIZES)
def test_generated_systems_classify_as_intended(kind, n):
    want = EXPECTED[kind](n)
    for seed in SEEDS:
        a, _ = generate_system(kind, n, seed, 0)
        assert classify(a) == want, (kind, n, seed)


@pytest.mark.parametrize("kind", list(BenchKind))
@pytest.mark.parametrize("n", SIZES)
def test_generated_systems_never_fall_back(kind, n):
    for seed in SEEDS:
        a, b = generate_system(kind, n, seed, 0)
        report = solve(a, b).report
        assert not report.fallback_taken
        assert report.relative_residual <= 100 * n * EPS
        if kind is BenchKind.SYMPD:
            assert report.method_used is Method.CHOLESKY_SYMPD


class TestSpec:
    def test_defaults(self):
        spec = BenchSpec("banded")
        assert spec.matrix_kind is BenchKind.BANDED5
        assert spec.sizes == (100, 250, 500, 1000) and spec.reps == 1000

    @pytest.mark.parametrize("kw", [{"sizes": ()}, {"sizes": (1,)}, {"reps": 0}, {"matrix_kind": "x"}])
    def test_invalid(self, kw):
        args = {"matrix_kind": "dense", **kw}
        with pytest.raises(ValueError):
            BenchSpec(**args)


def test_reduction_pct():
    assert BenchRow(10, 2.0, 0.5).reduction_pct == 75.0
    assert BenchRow(10, 1.0, 1.1).reduction_pct == pytest.approx(-10.0)


@pytest.mark.parametrize("kind", list(BenchKind))
def test_run_bench_single_rep(kind):
    seen = []
    rows = run_bench(BenchSpec(kind, sizes=(20, 30), reps=1, seed=5), progress=seen.append)
    assert [r.size for r in rows] == [20, 30]
    assert seen == rows
    for r in rows:
        assert r.mean_standard_s > 0 and r.mean_adaptive_s > 0
        assert r.reduction_pct == 100.0 * (1.0 - r.mean_adaptive_s / r.mean_standard_s)
        assert r.max_residual <= 100 * r.size * EPS


def test_run_bench_methods_recorded():
    (row,) = run_bench(BenchSpec("tri", sizes=(40,), reps=4))
    assert row.adaptive_methods == ("triangular-lower",)

import numpy as np
import pytest

from adaptsolve import (
    Method,
    PoorlyConditionedError,
    SolverConfig,
    ValidationError,
    relative_residual,
    solve,
    solve_general,
)
from adaptsolve.bench import gen_banded, gen_sympd
from adaptsolve.core import EPS, Triangle
from adaptsolve.kernels import (
    band_factor,
    band_rcond,
    cholesky_factor,
    cholesky_rcond,
    lu_factor,
    lu_rcond,
    pack_band,
    tri_rcond,
)

from conftest import TRIDIAG_5, LOWER_5, SYMPD_5
from oracles import STRUCTURE_KINDS, random_structured

NO_FALLBACK = SolverConfig(allow_fallback=False)


def test_sympd_generator_routes_to_cholesky(rng):
    a = gen_sympd(100, rng)
    out = solve(a, rng.uniform(size=100))
    assert out.report.method_used is Method.CHOLESKY_SYMPD
    assert not out.report.fallback_taken


def test_lower_triangular_known_solution(rng):
    a = np.tril(rng.uniform(-0.5, 0.5, (100, 100)))
    a[np.diag_indices(100)] += 1.0 + np.sqrt(100)
    out = solve(a, a @ np.ones(100))
    assert out.report.method_used is Method.TRIANGULAR_LOWER
    np.testing.assert_allclose(out.x, np.ones(100), atol=1e-10)


def test_singular_falls_back_to_min_norm():
    out = solve([[1.0, 2.0], [2.0, 4.0]], [3.0, 6.0])
    assert out.report.method_used is Method.SVD_FALLBACK
    assert out.report.fallback_taken
    assert out.report.rcond == 0.0
    assert out.report.effective_rank == 1
    np.testing.assert_allclose(out.x, [0.6, 1.2], atol=1e-12)


def test_singular_without_fallback_raises():
    with pytest.raises(PoorlyConditionedError) as info:
        solve([[1.0, 2.0], [2.0, 4.0]], [3.0, 6.0], NO_FALLBACK)
    assert info.value.rcond == 0.0


def test_tiny_pivot_hits_the_gate():
    a = np.diag([1.0, 1e-17])
    out = solve(a, [1.0, 1.0])
    assert out.report.method_used is Method.SVD_FALLBACK
    assert 0.0 < out.report.rcond < 0.5 * EPS
    with pytest.raises(PoorlyConditionedError):
        solve(a, [1.0, 1.0], NO_FALLBACK)


def test_threshold_is_configurable():
    a = np.diag([1.0, 1e-3])
    assert not solve(a, [1.0, 1.0]).report.fallback_taken
    out = solve(a, [1.0, 1.0], SolverConfig(rcond_threshold=1e-2))
    assert out.report.method_used is Method.SVD_FALLBACK


WIDE_BAND = SolverConfig(band_density_limit=0.6)


@pytest.mark.parametrize(
    "a, config, method",
    [
        (TRIDIAG_5, WIDE_BAND, Method.BANDED_LU),
        (TRIDIAG_5, None, Method.GENERAL_LU),
        (LOWER_5, None, Method.TRIANGULAR_LOWER),
        (LOWER_5.T, None, Method.TRIANGULAR_UPPER),
        (SYMPD_5, None, Method.CHOLESKY_SYMPD),
    ],
)
def test_small_matrices_route(a, config, method):
    x = np.array([1.0, -2.0, 3.0, -4.0, 5.0])
    out = solve(a, a @ x, config)
    assert out.report.method_used is method
    np.testing.assert_allclose(out.x, x, rtol=1e-12)


def test_cholesky_breakdown_goes_to_lu():
    # symmetric, passes the cheap checks, but indefinite
    a = np.array([[2.0, 1.9, 1.9], [1.9, 2.0, -1.9], [1.9, -1.9, 2.0]])
    out = solve(a, [1.0, 2.0, 3.0])
    assert out.report.method_used is Method.GENERAL_LU
    np.testing.assert_allclose(a @ out.x, [1.0, 2.0, 3.0], rtol=1e-12)


def test_multiple_rhs_and_vector_shapes(rng):
    a = rng.standard_normal((6, 6)) + 6 * np.eye(6)
    assert solve(a, rng.standard_normal(6)).x.shape == (6,)
    assert solve(a, rng.standard_normal((6, 1))).x.shape == (6, 1)
    b = rng.standard_normal((6, 3))
    x = solve(a, b).x
    assert x.shape == (6, 3)
    np.testing.assert_allclose(a @ x, b, atol=1e-12)


def test_non_square_goes_to_least_squares(rng):
    a = rng.standard_normal((8, 3))
    b = rng.standard_normal(8)
    out = solve(a, b)
    assert out.report.method_used is Method.SVD_FALLBACK
    assert out.x.shape == (3,)
    assert out.report.effective_rank == 3
    np.testing.assert_allclose(out.x, np.linalg.lstsq(a, b, rcond=None)[0], rtol=1e-10)
    s = np.linalg.svd(a, compute_uv=False)
    assert out.report.rcond == pytest.approx(s[-1] / s[0], rel=1e-12)


def test_underdetermined_shape(rng):
    out = solve(rng.standard_normal((2, 5)), rng.standard_normal((2, 4)))
    assert out.x.shape == (5, 4)


@pytest.mark.parametrize(
    "a, b",
    [
        (np.zeros((0, 0)), np.zeros(0)),
        (np.eye(2), np.zeros(0)),
        (np.eye(2), np.ones(3)),
        (np.array([[1.0, np.nan], [0.0, 1.0]]), np.ones(2)),
        (np.eye(2), np.array([1.0, np.inf])),
        (np.ones(3), np.ones(3)),
        (np.eye(2), np.ones((2, 2, 2))),
    ],
)
def test_validation(a, b):
    with pytest.raises(ValidationError):
        solve(a, b)


def test_solve_general_rejects_non_square():
    with pytest.raises(ValidationError):
        solve_general(np.ones((3, 2)), np.ones(3))


def test_solve_general_identity(rng):
    b = rng.standard_normal((4, 2))
    out = solve_general(np.eye(4), b)
    assert out.report.method_used is Method.GENERAL_LU
    assert np.array_equal(out.x, b)


def test_general_path_bit_identical_to_baseline(rng):
    for _ in range(20):
        a = rng.standard_normal((30, 30)) + 15 * np.eye(30)
        b = rng.standard_normal(30)
        adaptive = solve(a, b)
        assert adaptive.report.method_used is Method.GENERAL_LU
        baseline = solve_general(a, b)
        assert np.array_equal(adaptive.x, baseline.x)
        assert adaptive.report == baseline.report


def test_input_not_modified(rng):
    a = np.asfortranarray(gen_banded(20, 5, rng))
    b = rng.standard_normal(20)
    a0, b0 = a.copy(), b.copy()
    solve(a, b)
    solve_general(a, b)
    assert np.array_equal(a, a0) and np.array_equal(b, b0)


class TestForcedMethod:
    def test_forced_lu_on_banded(self):
        out = solve(TRIDIAG_5, np.ones(5), SolverConfig(force_method=Method.GENERAL_LU))
        assert out.report.method_used is Method.GENERAL_LU

    def test_forced_banded_uses_actual_band(self):
        out = solve(SYMPD_5, np.ones(5), SolverConfig(force_method="banded-lu"))
        assert out.report.method_used is Method.BANDED_LU
        np.testing.assert_allclose(SYMPD_5 @ out.x, np.ones(5), rtol=1e-12)

    def test_forced_svd(self):
        out = solve(LOWER_5, np.ones(5), SolverConfig(force_method=Method.SVD_FALLBACK))
        assert out.report.method_used is Method.SVD_FALLBACK
        np.testing.assert_allclose(LOWER_5 @ out.x, np.ones(5), rtol=1e-12)

    def test_forced_method_still_gated(self):
        cfg = SolverConfig(force_method=Method.GENERAL_LU, allow_fallback=False)
        with pytest.raises(PoorlyConditionedError):
            solve(np.diag([1.0, 1e-17]), np.ones(2), cfg)


class TestReportedRcond:
    def test_matches_kernel_values(self, rng):
        b = np.ones(5)
        f = band_factor(pack_band(TRIDIAG_5, 1, 1))
        assert solve(TRIDIAG_5, b, WIDE_BAND).report.rcond == band_rcond(f)
        assert solve(LOWER_5, b).report.rcond == tri_rcond(LOWER_5, Triangle.LOWER)
        assert solve(LOWER_5.T, b).report.rcond == tri_rcond(LOWER_5.T, Triangle.UPPER)
        assert solve(SYMPD_5, b).report.rcond == cholesky_rcond(cholesky_factor(SYMPD_5))
        a = rng.standard_normal((7, 7))
        assert solve(a, np.ones(7)).report.rcond == lu_rcond(lu_factor(a))

    def test_repeatable(self, rng):
        a = rng.standard_normal((9, 9))
        assert solve(a, np.ones(9)).report == solve(a, np.ones(9)).report

    def test_residual_field(self, rng):
        a = rng.standard_normal((9, 9)) + 9 * np.eye(9)
        b = rng.standard_normal(9)
        out = solve(a, b)
        assert out.report.relative_residual == relative_residual(a, out.x, b)
        assert out.report.relative_residual <= 100 * 9 * EPS


def test_relative_residual_zero_denominator():
    assert relative_residual(np.zeros((2, 2)), np.zeros(2), np.zeros(2)) == 0.0


@pytest.mark.parametrize("kind", STRUCTURE_KINDS)
@pytest.mark.parametrize("n", [10, 50, 100])
def test_agrees_with_baseline(kind, n):
    rng = np.random.default_rng([n, STRUCTURE_KINDS.index(kind)])
    checked = 0
    for _ in range(200):
        a = random_structured(kind, n, rng)
        b = rng.standard_normal(n)
        base = solve_general(a, b)
        if base.report.fallback_taken or base.report.rcond < 1e-8:
            continue
        x = solve(a, b).x
        err = np.abs(x - base.x).sum() / np.abs(base.x).sum()
        assert err <= 1e-8, (kind, n, err)
        checked += 1
    assert checked >= 50

"""Unit tests for the Riccati, Stein and spectral helpers."""

import numpy as np
import pytest

from config import SolverSettings
from exceptions import (
    DimensionMismatch,
    NoStabilizingSolution,
    SingularInnovation,
    UnstableOperator,
    UnstablePair,
    ValidationError,
)
from linalg_core import (
    DareProblem,
    Orientation,
    as_matrix,
    max_singular_value,
    relative_residual,
    solve_dare,
    solve_stein,
    solve_sylvester_stein,
    spectral_radius,
    sqrt_psd,
)

SCALAR_P = (0.81 + np.sqrt(0.81**2 + 4.0)) / 2.0  # root of P^2 - 0.81 P - 1


def _random_stable(rng, n, radius):
    A = rng.standard_normal((n, n))
    return A * radius / spectral_radius(A)


def _stein_series(A, C, tail=1e-14):
    X = np.zeros_like(C)
    term = C.copy()
    while np.linalg.norm(term) > tail * max(np.linalg.norm(X), 1.0):
        X = X + term
        term = A @ term @ A.conj().T
    return X


# ============================================================================
# Spectral helpers
# ============================================================================


class TestSpectral:
    def test_max_singular_value_matches_power_iteration(self):
        rng = np.random.default_rng(1)
        M = rng.standard_normal((5, 5))
        v = np.ones(5)
        for _ in range(2000):
            v = M.T @ (M @ v)
            v /= np.linalg.norm(v)
        oracle = np.sqrt(v @ (M.T @ (M @ v)))
        assert max_singular_value(M) == pytest.approx(oracle, rel=1e-9)

    def test_spectral_radius(self):
        assert spectral_radius(np.array([[0.5, 1.0], [0.0, -0.8]])) == pytest.approx(0.8)

    def test_empty_matrices(self):
        assert max_singular_value(np.zeros((0, 0))) == 0.0
        assert spectral_radius(np.zeros((0, 0))) == 0.0

    def test_spectral_radius_needs_square(self):
        with pytest.raises(DimensionMismatch):
            spectral_radius(np.ones((2, 3)))

    def test_sqrt_psd(self):
        rng = np.random.default_rng(2)
        B = rng.standard_normal((4, 4))
        M = B @ B.T
        root = sqrt_psd(M)
        np.testing.assert_allclose(root @ root, M, atol=1e-10)
        np.testing.assert_allclose(root, root.T, atol=1e-12)

    def test_relative_residual_zero_scale(self):
        assert relative_residual(np.zeros((2, 2)), np.zeros((2, 2))) == 0.0

    def test_as_matrix_shapes(self):
        assert as_matrix(0.9, "F").shape == (1, 1)
        assert as_matrix([1.0, 2.0], "G").shape == (2, 1)
        assert as_matrix([1.0, 2.0], "H", rows=1).shape == (1, 2)

    def test_as_matrix_rejects(self):
        with pytest.raises(ValidationError):
            as_matrix([[np.nan]], "F")
        with pytest.raises(ValidationError):
            as_matrix(np.zeros((2, 2, 2)), "F")
        with pytest.raises(DimensionMismatch):
            as_matrix(np.zeros((2, 2)), "F", rows=3)


# ============================================================================
# Riccati equations
# ============================================================================


class TestSolveDare:
    def test_scalar_kalman(self):
        sol = solve_dare(DareProblem(A=0.9, B=1.0, C_cost=1.0, R0=1.0))
        assert sol.X[0, 0] == pytest.approx(SCALAR_P, rel=1e-12)
        assert sol.X[0, 0] == pytest.approx(1.4839, abs=1e-4)
        assert sol.gain[0, 0] == pytest.approx(0.5377, abs=1e-4)
        assert sol.closed_loop[0, 0] == pytest.approx(0.3623, abs=1e-4)
        assert sol.R[0, 0] == pytest.approx(1.0 + SCALAR_P)

    @pytest.mark.parametrize("method", ["doubling", "fixed_point", "schur"])
    def test_each_method_alone(self, method):
        settings = SolverSettings(methods=[method])
        sol = solve_dare(DareProblem(A=0.9, B=1.0, C_cost=1.0, R0=1.0), settings)
        assert sol.method == method
        assert sol.X[0, 0] == pytest.approx(SCALAR_P, rel=1e-10)

    def test_mimo_estimation_residual(self):
        rng = np.random.default_rng(3)
        F = _random_stable(rng, 4, 1.1)
        H = rng.standard_normal((2, 4))
        G = rng.standard_normal((4, 3))
        prob = DareProblem(A=F, B=H.T, C_cost=G @ G.T, R0=np.eye(2))
        sol = solve_dare(prob)
        assert sol.residual <= 1e-10
        assert prob.residual(sol.X) <= 1e-10
        assert sol.closed_loop_radius < 1.0
        np.testing.assert_allclose(sol.X, sol.X.T, atol=1e-10)
        np.testing.assert_allclose(sol.closed_loop, F - sol.gain @ H, atol=1e-12)

    def test_control_orientation(self):
        rng = np.random.default_rng(4)
        F = _random_stable(rng, 3, 0.95)
        G = rng.standard_normal((3, 2))
        H = rng.standard_normal((1, 3))
        prob = DareProblem(
            A=F, B=G, C_cost=H.T @ H, R0=np.eye(2), sign=Orientation.CONTROL
        )
        sol = solve_dare(prob)
        assert sol.residual <= 1e-10
        np.testing.assert_allclose(sol.closed_loop, F - G @ sol.gain, atol=1e-12)

    def test_indefinite_weight(self):
        # H-infinity shaped weight diag(1, -g^2) with a generous level
        C = np.array([[1.0], [1.0]])
        prob = DareProblem(A=0.9, B=C.T, C_cost=1.0, R0=np.diag([1.0, -100.0]))
        sol = solve_dare(prob)
        assert sol.residual <= 1e-10
        assert sol.R_sqrt is None

    def test_undetectable_plant(self):
        prob = DareProblem(A=2.0, B=0.0, C_cost=1.0, R0=1.0)
        with pytest.raises(NoStabilizingSolution):
            solve_dare(prob)

    def test_singular_weight(self):
        with pytest.raises(SingularInnovation):
            solve_dare(DareProblem(A=0.5, B=1.0, C_cost=1.0, R0=0.0))

    def test_asymmetric_constant(self):
        with pytest.raises(ValidationError, match="not symmetric"):
            DareProblem(A=np.eye(2), B=np.ones((2, 1)), C_cost=[[1.0, 2.0], [0.0, 1.0]], R0=1.0)

    def test_dimension_checks(self):
        with pytest.raises(DimensionMismatch):
            DareProblem(A=np.eye(2), B=np.ones((3, 1)), C_cost=np.eye(2), R0=1.0)


# ============================================================================
# Stein equations
# ============================================================================


class TestStein:
    def test_matches_series(self):
        rng = np.random.default_rng(5)
        A = _random_stable(rng, 4, 0.95)
        B = rng.standard_normal((4, 4))
        C = B @ B.T
        X = solve_stein(A, C)
        expected = _stein_series(A, C)
        assert np.linalg.norm(X - expected) <= 1e-10 * np.linalg.norm(expected)

    def test_symmetry_preserved(self):
        rng = np.random.default_rng(6)
        A = _random_stable(rng, 3, 0.7)
        C = np.eye(3)
        X = solve_stein(A, C)
        np.testing.assert_allclose(X, X.T, atol=1e-10)
        assert relative_residual(X - A @ X @ A.T - C, X, C) <= 1e-12

    def test_schur_and_kronecker_agree(self):
        rng = np.random.default_rng(7)
        A = _random_stable(rng, 5, 0.9)
        C = np.eye(5)
        kron = solve_stein(A, C, SolverSettings(kronecker_max_dim=8))
        schur = solve_stein(A, C, SolverSettings(kronecker_max_dim=0))
        np.testing.assert_allclose(kron, schur, rtol=1e-10, atol=1e-12)

    def test_unstable_operator(self):
        with pytest.raises(UnstableOperator):
            solve_stein(np.array([[1.0]]), np.array([[1.0]]))

    def test_zero_dimension_operator(self):
        A = np.zeros((2, 2))
        C = np.diag([1.0, 2.0])
        np.testing.assert_allclose(solve_stein(A, C), C)

    def test_residual_above_tolerance_warns(self, mocker):
        logger = mocker.patch("linalg_core.stein.get_logger").return_value
        settings = SolverSettings(stein_residual_tolerance=-1.0)
        X = solve_stein(np.array([[0.5]]), np.array([[1.0]]), settings)
        np.testing.assert_allclose(X, [[4.0 / 3.0]])
        logger.warning.assert_called_once()
        assert "residual" in logger.warning.call_args.kwargs

    def test_two_sided(self):
        rng = np.random.default_rng(8)
        A = _random_stable(rng, 3, 0.8)
        B = _random_stable(rng, 2, 0.9)
        C = rng.standard_normal((3, 2))
        X = solve_sylvester_stein(A, B, C)
        assert relative_residual(X - A @ X @ B - C, X, C) <= 1e-12

    def test_two_sided_unstable_pair(self):
        with pytest.raises(UnstablePair):
            solve_sylvester_stein(np.array([[1.2]]), np.array([[0.9]]), np.array([[1.0]]))

    def test_two_sided_shapes(self):
        with pytest.raises(DimensionMismatch):
            solve_sylvester_stein(np.eye(2) * 0.5, np.eye(3) * 0.5, np.ones((3, 2)))

"""Unit tests for realizations and their evaluation on the unit circle."""

import json

import numpy as np
import pytest

from exceptions import DimensionMismatch, SingularResolvent, ValidationError
from state_space import (
    LtiFilter,
    StateSpaceModel,
    TransferSample,
    error_operator_sample,
    error_system,
    eval_adjoint,
    eval_adjoint_batch,
    eval_plant_channels,
    eval_transfer,
    eval_transfer_batch,
    inverse,
    parallel,
    series,
)
from synthesis import kalman_filter
from utils import json_text


def _random_filter(rng, d, p, m, radius=0.7, name="random"):
    A = rng.standard_normal((d, d))
    A *= radius / max(abs(np.linalg.eigvals(A)))
    return LtiFilter(
        A, rng.standard_normal((d, m)), rng.standard_normal((p, d)), rng.standard_normal((p, m)),
        name=name,
    )


class TestStateSpaceModel:
    def test_scalar_coercion(self, scalar):
        assert scalar.dims == (1, 1, 1, 1)
        assert scalar.F.shape == (1, 1)

    def test_row_vectors_for_h_and_l(self):
        model = StateSpaceModel(F=np.eye(2), G=[[0.0], [1.0]], H=[1.0, 0.0], L=[1.0, 1.0])
        assert model.H.shape == (1, 2)
        assert model.L.shape == (1, 2)

    def test_non_square_f(self):
        with pytest.raises(DimensionMismatch):
            StateSpaceModel(
                F=np.ones((2, 3)), G=np.ones((2, 1)), H=np.ones((1, 3)), L=np.ones((1, 3))
            )

    def test_inconsistent_h(self):
        with pytest.raises(DimensionMismatch):
            StateSpaceModel(F=np.eye(2), G=np.ones((2, 1)), H=np.ones((1, 3)), L=np.ones((1, 2)))

    def test_non_finite(self):
        with pytest.raises(ValidationError):
            StateSpaceModel(F=[[np.inf]], G=[[1.0]], H=[[1.0]], L=[[1.0]])

    def test_degenerate(self):
        assert StateSpaceModel(F=0.5, G=1.0, H=1.0, L=0.0).is_degenerate
        assert StateSpaceModel(F=0.5, G=0.0, H=1.0, L=1.0).is_degenerate

    def test_channels(self, tracking):
        assert tracking.h_channel().D.shape == (1, 1)
        assert tracking.l_channel().C.shape == (1, 2)


class TestLtiFilter:
    def test_static_filter(self):
        filt = LtiFilter.static([[2.0, 3.0]])
        assert filt.dim == 0
        assert filt.n_inputs == 2
        np.testing.assert_allclose(eval_transfer(filt, 1.0), [[2.0, 3.0]])

    def test_zero_filter(self):
        filt = LtiFilter.zero(1, 2, dim=3)
        assert filt.dim == 3
        assert filt.is_stable()
        assert np.all(eval_transfer(filt, 0.3) == 0)

    def test_from_dict_after_json(self):
        rng = np.random.default_rng(0)
        filt = _random_filter(rng, 3, 1, 2, name="regret_opt")
        restored = LtiFilter.from_dict(json.loads(json_text(filt.to_dict())))
        assert restored.name == "regret_opt"
        np.testing.assert_array_equal(restored.A, filt.A)
        np.testing.assert_array_equal(restored.D, filt.D)

    def test_from_dict_malformed(self):
        with pytest.raises(ValidationError):
            LtiFilter.from_dict({"A": [[0.0]]})

    def test_transfer_sample_reduces_omega(self):
        sample = TransferSample(omega=-np.pi / 2, value=1.0)
        assert sample.omega == pytest.approx(1.5 * np.pi)
        assert sample.value.shape == (1, 1)


class TestFrequencyEvaluation:
    def test_scalar_values(self):
        filt = LtiFilter(0.9, 1.0, 1.0, 0.0)
        assert eval_transfer(filt, 0.0)[0, 0].real == pytest.approx(10.0)
        assert eval_transfer(filt, np.pi)[0, 0].real == pytest.approx(-1 / 1.9)
        assert eval_transfer(filt, np.pi)[0, 0].real == pytest.approx(-0.5263, abs=1e-4)

    def test_pole_on_circle(self):
        with pytest.raises(SingularResolvent):
            eval_transfer(LtiFilter(1.0, 1.0, 1.0, 0.0), 0.0)

    def test_conjugate_symmetry(self):
        rng = np.random.default_rng(11)
        filt = _random_filter(rng, 4, 2, 3)
        omegas = rng.uniform(0.0, 2 * np.pi, 100)
        np.testing.assert_allclose(
            eval_transfer_batch(filt, 2 * np.pi - omegas),
            np.conj(eval_transfer_batch(filt, omegas)),
            atol=1e-13,
            rtol=1e-12,
        )

    def test_adjoint_is_conjugate_transpose(self):
        rng = np.random.default_rng(12)
        filt = _random_filter(rng, 3, 2, 2)
        for omega in rng.uniform(0.0, 2 * np.pi, 20):
            np.testing.assert_allclose(
                eval_adjoint(filt, omega), eval_transfer(filt, omega).conj().T, atol=1e-13
            )

    def test_adjoint_static(self):
        filt = LtiFilter.static([[1.0, 2.0]])
        assert eval_adjoint_batch(filt, [0.1, 0.2]).shape == (2, 2, 1)

    def test_plant_channels(self, tracking):
        H, L = eval_plant_channels(tracking, 0.5)
        np.testing.assert_allclose(H, eval_transfer(tracking.h_channel(), 0.5), atol=1e-13)
        np.testing.assert_allclose(L, eval_transfer(tracking.l_channel(), 0.5), atol=1e-13)

    def test_batch_chunking(self):
        rng = np.random.default_rng(13)
        filt = _random_filter(rng, 2, 1, 1)
        omegas = np.linspace(0.1, 6.0, 50)
        np.testing.assert_allclose(
            eval_transfer_batch(filt, omegas, chunk=7), eval_transfer_batch(filt, omegas)
        )


class TestCompose:
    OMEGAS = 2 * np.pi * (np.arange(256) + 0.5) / 256

    def test_series(self):
        rng = np.random.default_rng(21)
        first = _random_filter(rng, 2, 3, 2)
        second = _random_filter(rng, 3, 1, 3)
        cascade = series(first, second)
        np.testing.assert_allclose(
            eval_transfer_batch(cascade, self.OMEGAS),
            eval_transfer_batch(second, self.OMEGAS) @ eval_transfer_batch(first, self.OMEGAS),
            rtol=1e-10,
            atol=1e-10,
        )

    def test_series_dimension_check(self):
        rng = np.random.default_rng(22)
        with pytest.raises(DimensionMismatch):
            series(_random_filter(rng, 2, 2, 1), _random_filter(rng, 2, 1, 3))

    def test_parallel(self):
        rng = np.random.default_rng(23)
        a, b = _random_filter(rng, 2, 2, 2), _random_filter(rng, 3, 2, 2)
        np.testing.assert_allclose(
            eval_transfer_batch(parallel(a, b), self.OMEGAS),
            eval_transfer_batch(a, self.OMEGAS) + eval_transfer_batch(b, self.OMEGAS),
            atol=1e-10,
        )

    def test_inverse(self):
        rng = np.random.default_rng(24)
        filt = _random_filter(rng, 3, 2, 2)
        filt = filt.with_feedthrough(filt.D + 3 * np.eye(2))
        product = eval_transfer_batch(filt, self.OMEGAS) @ eval_transfer_batch(
            inverse(filt), self.OMEGAS
        )
        np.testing.assert_allclose(product, np.broadcast_to(np.eye(2), product.shape), atol=1e-10)

    def test_inverse_needs_square(self):
        with pytest.raises(DimensionMismatch):
            inverse(LtiFilter.static([[1.0, 2.0]]))

    def test_error_system_matches_definition(self, mimo):
        rng = np.random.default_rng(25)
        filt = _random_filter(rng, 2, mimo.p, mimo.m)
        for omega in (0.3, 1.7, 4.0):
            H, L = eval_plant_channels(mimo, omega)
            K = eval_transfer(filt, omega)
            expected = np.hstack([L - K @ H, -K])
            sample = error_operator_sample(mimo, filt, omega)
            np.testing.assert_allclose(sample, expected, atol=1e-10)

    def test_error_system_drops_plant_poles_for_kalman(self, tracking):
        k_h2 = kalman_filter(tracking)
        assert error_system(tracking, k_h2).dim == tracking.n
        # evaluable at omega = 0 even though the plant has poles at z = 1
        sample = error_operator_sample(tracking, k_h2, 0.0)
        assert np.all(np.isfinite(sample))

    def test_error_system_dimension_check(self, scalar):
        with pytest.raises(DimensionMismatch):
            error_system(scalar, LtiFilter.static([[1.0, 1.0]]))

"""Algebraic identities behind the regret criterion, checked on random filters.

For any causal K:
    T_K T_K0* = T_K0 T_K0*
    T_K T_K* - T_K0 T_K0* = (K - K0)(I + H H*)(K - K0)*
"""

import numpy as np
import pytest

from analysis import FrequencyMatched, error_operator_batch
from model_file import scalar_model, tracking_model
from state_space import LtiFilter, eval_plant_channels_batch, eval_transfer_batch
from synthesis import noncausal_response_batch

GRID_64 = 2 * np.pi * (np.arange(64) + 0.5) / 64


def _herm(X):
    return np.conj(np.swapaxes(X, -1, -2))


def _random_causal_filters(model, count=10, seed=0):
    rng = np.random.default_rng(seed)
    filters = []
    for k in range(count):
        d = int(rng.integers(1, 4))
        A = rng.standard_normal((d, d))
        A *= rng.uniform(0.1, 0.9) / max(abs(np.linalg.eigvals(A)))
        filters.append(
            LtiFilter(
                A,
                rng.standard_normal((d, model.m)),
                rng.standard_normal((model.p, d)),
                rng.standard_normal((model.p, model.m)),
                name=f"random_{k}",
            )
        )
    return filters


MODELS = {
    "scalar": scalar_model,
    "tracking": lambda: tracking_model(1.0),
}


@pytest.fixture(params=sorted(MODELS))
def model(request):
    return MODELS[request.param]()


class TestRegretIdentities:
    def test_cross_term_invariance(self, model):
        T0 = error_operator_batch(model, FrequencyMatched(), GRID_64)
        reference = T0 @ _herm(T0)
        for filt in _random_causal_filters(model):
            TK = error_operator_batch(model, filt, GRID_64)
            cross = TK @ _herm(T0)
            scale = np.maximum(np.linalg.norm(reference, axis=(1, 2)), 1.0)
            gap = np.linalg.norm(cross - reference, axis=(1, 2)) / scale
            assert gap.max() <= 1e-8, filt.name

    def test_completion_of_square(self, model):
        T0 = error_operator_batch(model, FrequencyMatched(), GRID_64)
        H, _ = eval_plant_channels_batch(model, GRID_64)
        K0 = noncausal_response_batch(model, GRID_64)
        weight = np.eye(model.m) + H @ _herm(H)
        for filt in _random_causal_filters(model, seed=1):
            TK = error_operator_batch(model, filt, GRID_64)
            lhs = TK @ _herm(TK) - T0 @ _herm(T0)
            diff = eval_transfer_batch(filt, GRID_64) - K0
            rhs = diff @ weight @ _herm(diff)
            scale = np.maximum(np.linalg.norm(TK @ _herm(TK), axis=(1, 2)), 1.0)
            gap = np.linalg.norm(lhs - rhs, axis=(1, 2)) / scale
            assert gap.max() <= 1e-8, filt.name

    def test_noncausal_operator_definition(self, model):
        T0 = error_operator_batch(model, FrequencyMatched(), GRID_64)
        H, L = eval_plant_channels_batch(model, GRID_64)
        K0 = noncausal_response_batch(model, GRID_64)
        expected = np.concatenate([L - K0 @ H, -K0], axis=-1)
        np.testing.assert_allclose(T0, expected, atol=1e-10)

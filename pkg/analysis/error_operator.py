"""Samples of error operators T_K on the unit circle.

An estimator is either a causal realization (LtiFilter) or the noncausal
optimum, which only exists pointwise in frequency (FrequencyMatched).
"""

from collections.abc import Iterable
from dataclasses import dataclass

import numpy as np

from config import Settings, get_default_settings
from state_space import LtiFilter, StateSpaceModel, error_system, eval_transfer_batch
from synthesis import noncausal_error_operator_batch


@dataclass(frozen=True)
class FrequencyMatched:
    """The noncausal estimator K0, evaluated frequency by frequency."""

    name: str = "noncausal"


Estimator = LtiFilter | FrequencyMatched


def error_operator_batch(
    model: StateSpaceModel,
    estimator: Estimator,
    omegas: float | Iterable[float],
    settings: Settings | None = None,
) -> np.ndarray:
    """T_K(e^{jw}) = [L - K H, -K] at every frequency, shape (N, p, q + m).

    Raises:
        DimensionMismatch: Filter does not map m observations to p estimates.
        SingularResolvent: A frequency hits a pole of the realization.
    """
    if isinstance(estimator, FrequencyMatched):
        return noncausal_error_operator_batch(model, omegas)
    settings = settings or get_default_settings()
    return eval_transfer_batch(error_system(model, estimator), omegas, chunk=settings.grid.chunk)


def gram_batch(samples: np.ndarray) -> np.ndarray:
    """T* T per frequency."""
    return np.conj(np.swapaxes(samples, -1, -2)) @ samples


def operator_curve(samples: np.ndarray) -> np.ndarray:
    """Largest singular value squared per frequency."""
    if samples.shape[-1] == 0 or samples.shape[-2] == 0:
        return np.zeros(samples.shape[0])
    return np.linalg.svd(samples, compute_uv=False)[:, 0] ** 2


def regret_curve(samples: np.ndarray, reference: np.ndarray) -> np.ndarray:
    """Largest |eigenvalue| of T*T - T0*T0 per frequency.

    The difference is Hermitian but indefinite, so the operator norm is the
    largest eigenvalue modulus.
    """
    diff = gram_batch(samples) - gram_batch(reference)
    diff = 0.5 * (diff + np.conj(np.swapaxes(diff, -1, -2)))
    return np.max(np.abs(np.linalg.eigvalsh(diff)), axis=-1)

"""Tap-energy split of sampled transfer functions.

With z = e^{jw}, causal terms z^-k (k >= 0) land in inverse-FFT bins
0..N/2-1 and strictly anticausal terms z^k (k >= 1) in bins N/2..N-1. The
midpoint grid adds a unit-modulus phase to each tap, which tap energies do not
see.
"""

import numpy as np

from exceptions import ValidationError


def tap_energies(samples: np.ndarray) -> tuple[float, float]:
    """(causal, anticausal) tap energy of samples of shape (N, rows, cols)."""
    samples = np.asarray(samples)
    N = samples.shape[0]
    if N < 2 or N % 2:
        raise ValidationError("Tap split needs an even number of samples", f"got {N}")
    taps = np.fft.ifft(samples, axis=0)
    energy = np.sum(np.abs(taps) ** 2, axis=tuple(range(1, taps.ndim)))
    return float(np.sum(energy[: N // 2])), float(np.sum(energy[N // 2 :]))


def causal_fraction(samples: np.ndarray) -> float:
    """Share of tap energy in causal bins (0 for an all-zero signal)."""
    causal, anticausal = tap_energies(samples)
    total = causal + anticausal
    return causal / total if total > 0 else 0.0


def anticausal_fraction(samples: np.ndarray) -> float:
    causal, anticausal = tap_energies(samples)
    total = causal + anticausal
    return anticausal / total if total > 0 else 0.0

"""
Pytest configuration for regret-filter tests.

This file provides shared configuration and fixtures for all test modules.
"""

import numpy as np
import pytest

import observability
from config import Settings, set_default_settings
from model_file import scalar_model, tracking_model
from state_space import StateSpaceModel

# ============================================================================
# Pytest Configuration
# ============================================================================


def pytest_configure(config):
    """
    Configure custom pytest markers.

    This function is called by pytest at the start of the test session
    to register custom markers used in the test suite.
    """
    markers = [
        ("slow", "marks tests as slow (deselect with '-m \"not slow\"')"),
        ("integration", "marks end-to-end CLI tests"),
    ]
    for marker, description in markers:
        config.addinivalue_line("markers", f"{marker}: {description}")


# ============================================================================
# Fixtures
# ============================================================================


@pytest.fixture(autouse=True)
def reset_singletons():
    """Restore default settings and logging around each test."""
    set_default_settings(None)
    observability.reset()
    yield
    set_default_settings(None)
    observability.reset()


@pytest.fixture
def settings() -> Settings:
    return Settings()


@pytest.fixture
def scalar() -> StateSpaceModel:
    """F = 0.9, G = H = L = 1."""
    return scalar_model()


@pytest.fixture
def tracking() -> StateSpaceModel:
    """Double integrator with delta_t = 1."""
    return tracking_model(1.0)


@pytest.fixture
def tracking_current() -> StateSpaceModel:
    """Double integrator estimating the current position, L = [1, 0]."""
    return tracking_model(1.0, target="current")


@pytest.fixture
def mimo() -> StateSpaceModel:
    """Stable 3-state plant with two disturbances, two measurements and one target."""
    rng = np.random.default_rng(7)
    F = rng.standard_normal((3, 3))
    F *= 0.8 / max(abs(np.linalg.eigvals(F)))
    return StateSpaceModel(
        F=F,
        G=rng.standard_normal((3, 2)),
        H=rng.standard_normal((2, 3)),
        L=rng.standard_normal((1, 3)),
        name="mimo",
    )


__all__ = ["pytest_configure"]

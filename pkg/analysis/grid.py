"""Uniform frequency grids on the unit circle."""

from dataclasses import dataclass

import numpy as np

from config import Settings, get_default_settings
from exceptions import ValidationError

MIN_GRID_COUNT = 64


@dataclass(frozen=True)
class FrequencyGrid:
    """Midpoint grid w_k = 2 pi (k + 1/2) / N, k = 0..N-1.

    N is a power of two of at least 64. The points avoid w = 0 and w = pi,
    where marginally stable plants have their poles.
    """

    count: int

    def __post_init__(self):
        count = self.count
        if isinstance(count, bool) or not isinstance(count, (int, np.integer)):
            raise ValidationError("Grid count must be an integer", f"got {count!r}")
        if count < MIN_GRID_COUNT or count & (count - 1):
            raise ValidationError(
                f"Grid count must be a power of two >= {MIN_GRID_COUNT}", f"got {count}"
            )
        object.__setattr__(self, "count", int(count))

    @property
    def omegas(self) -> np.ndarray:
        return 2.0 * np.pi * (np.arange(self.count) + 0.5) / self.count

    @property
    def step(self) -> float:
        return 2.0 * np.pi / self.count

    def refined(self) -> "FrequencyGrid":
        """Grid with twice as many points."""
        return FrequencyGrid(2 * self.count)

    @classmethod
    def from_settings(cls, settings: Settings | None = None) -> "FrequencyGrid":
        settings = settings or get_default_settings()
        return cls(settings.grid.count)

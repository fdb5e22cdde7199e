"""Dense linear-algebra solvers: Riccati, Stein and two-sided Stein equations."""

from .riccati import DareProblem, Orientation, RiccatiSolution, solve_dare
from .spectral import (
    as_matrix,
    chol_lower,
    hermitian_part,
    is_hermitian,
    max_singular_value,
    relative_residual,
    spectral_radius,
    sqrt_psd,
)
from .stein import solve_stein, solve_sylvester_stein

__all__ = [
    "DareProblem",
    "Orientation",
    "RiccatiSolution",
    "solve_dare",
    "solve_stein",
    "solve_sylvester_stein",
    "max_singular_value",
    "spectral_radius",
    "as_matrix",
    "chol_lower",
    "hermitian_part",
    "is_hermitian",
    "relative_residual",
    "sqrt_psd",
]

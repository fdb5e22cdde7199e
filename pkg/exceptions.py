"""Exception hierarchy for regret-filter.

Every failure raised by the library derives from FilterError, so callers can
catch all of them with a single except clause. The CLI maps the three families
(input, solver, synthesis) to distinct exit codes.
"""


class FilterError(Exception):
    """Base exception for all regret-filter errors.

    Attributes:
        message: Human-readable error description.
        details: Additional error context (optional).
    """

    def __init__(self, message: str, details: str | None = None):
        """Initialize filter error.

        Args:
            message: Human-readable error description.
            details: Additional error context.
        """
        self.message = message
        self.details = details
        super().__init__(self._format_message())

    def _format_message(self) -> str:
        """Format error message with details."""
        if self.details:
            return f"{self.message}: {self.details}"
        return self.message


class ValidationError(FilterError):
    """Invalid input: malformed matrices, bad parameters, bad grid sizes.

    Examples:
        - Non-finite matrix entries
        - Asymmetric weight in a Riccati problem
        - Grid count that is not a power of two
    """

    pass


class DimensionMismatch(ValidationError):
    """Matrix or filter dimensions are inconsistent with each other."""

    pass


class ModelParseError(ValidationError):
    """A model file or builtin model specifier could not be parsed.

    Examples:
        - Ragged nested arrays
        - NaN or Inf entries
        - Missing one of the keys F, G, H, L
        - Unknown builtin name
    """

    pass


class ConfigurationError(FilterError):
    """Invalid configuration file or settings value."""

    pass


class SolverError(FilterError):
    """A numerical solver failed to produce a certified answer."""

    pass


class NoStabilizingSolution(SolverError):
    """No Riccati method returned a stabilizing solution passing the residual check."""

    pass


class SingularInnovation(SolverError):
    """The innovation (weight) matrix R0 + B*XB is not invertible."""

    pass


class UnstableOperator(SolverError):
    """A Stein equation was given a matrix with spectral radius at or above one."""

    pass


class UnstablePair(SolverError):
    """A two-sided Stein equation was given A, B with rho(A) * rho(B) >= 1."""

    pass


class SingularResolvent(SolverError):
    """zI - A is singular at the requested point on the unit circle."""

    pass


class NonConvergedQuadrature(SolverError):
    """Grid refinement hit its cap before the quadrature settled."""

    pass


class SynthesisError(FilterError):
    """The filter synthesis pipeline could not complete."""

    pass


class IndefiniteRQ(SynthesisError):
    """R_Q = gamma^2 I + L Q L* is not positive definite at this gamma."""

    pass


class BracketFailure(SynthesisError):
    """A bisection bracket could not be established or was not monotone."""

    pass


class SingularPencil(SynthesisError):
    """The Nehari constants degenerate: I - F_P Z F_P* Pi is singular or F_N is unstable."""

    pass


class Infeasible(SynthesisError):
    """The requested H-infinity attenuation level cannot be achieved."""

    pass


# Map error types to user-friendly descriptions
ERROR_DESCRIPTIONS = {
    "FilterError": "Filter synthesis library error",
    "ValidationError": "Input validation failure",
    "DimensionMismatch": "Inconsistent matrix or filter dimensions",
    "ModelParseError": "Model file could not be parsed",
    "ConfigurationError": "Configuration file or value error",
    "SolverError": "Numerical solver failure",
    "NoStabilizingSolution": "Riccati equation has no certified stabilizing solution",
    "SingularInnovation": "Riccati innovation matrix is singular",
    "UnstableOperator": "Stein equation operator is not strictly stable",
    "UnstablePair": "Two-sided Stein equation operators are not jointly stable",
    "SingularResolvent": "Transfer function evaluated on a pole",
    "NonConvergedQuadrature": "Frequency quadrature did not converge",
    "SynthesisError": "Filter synthesis pipeline failure",
    "IndefiniteRQ": "Regret level too small for the Q Riccati equation",
    "BracketFailure": "Bisection bracket could not be established",
    "SingularPencil": "Nehari construction degenerated at the optimum",
    "Infeasible": "Requested attenuation level is infeasible",
}


def get_error_description(error: Exception) -> str:
    """Get user-friendly description for an error.

    Args:
        error: Exception instance.

    Returns:
        User-friendly error description.

    Example:
        >>> print(get_error_description(UnstableOperator("rho(A) = 1.0")))
        Stein equation operator is not strictly stable
    """
    error_type = type(error).__name__
    return ERROR_DESCRIPTIONS.get(error_type, "Unknown error type")


def get_error_suggestion(error: Exception) -> str | None:
    """Get actionable suggestion for resolving an error.

    Args:
        error: Exception instance.

    Returns:
        Actionable suggestion or None if no specific suggestion available.
    """
    # Subclasses first: isinstance checks on the families would shadow them
    if isinstance(error, ModelParseError):
        return "Check the model JSON: keys F, G, H, L as rectangular arrays of finite numbers"

    if isinstance(error, DimensionMismatch):
        return "Check that F is n x n, G is n x q, H is m x n, L is p x n"

    if isinstance(error, ValidationError):
        return "Check input parameters and try again"

    if isinstance(error, ConfigurationError):
        return "Compare the configuration file against config/default.yaml"

    if isinstance(error, NoStabilizingSolution):
        return "Check that (F, H) is detectable and (F, G) is stabilizable"

    if isinstance(error, (UnstableOperator, UnstablePair)):
        return "Only strictly stable closed-loop matrices can be passed to Stein solvers"

    if isinstance(error, SingularResolvent):
        return "Evaluate away from the plant poles or use a stable realization"

    if isinstance(error, NonConvergedQuadrature):
        return "Start from a larger grid or relax grid.refine_tolerance"

    if isinstance(error, BracketFailure):
        return "Loosen the bisection tolerance or inspect the bisection record"

    if isinstance(error, SingularPencil):
        return "Retry with a slightly larger gamma"

    if isinstance(error, Infeasible):
        return "Increase the attenuation level"

    if isinstance(error, IndefiniteRQ):
        return "Increase gamma"

    if isinstance(error, SolverError):
        return "Check model conditioning"

    return None

"""Unit tests for exception hierarchy and error handling."""

import pytest

from exceptions import (
    BracketFailure,
    ConfigurationError,
    DimensionMismatch,
    FilterError,
    IndefiniteRQ,
    Infeasible,
    ModelParseError,
    NoStabilizingSolution,
    NonConvergedQuadrature,
    SingularInnovation,
    SingularPencil,
    SingularResolvent,
    SolverError,
    SynthesisError,
    UnstableOperator,
    UnstablePair,
    ValidationError,
    get_error_description,
    get_error_suggestion,
)


class TestFilterError:
    """Test base FilterError class."""

    def test_error_creation(self):
        error = FilterError("Test error")
        assert error.message == "Test error"
        assert error.details is None
        assert "Test error" in str(error)

    def test_error_with_details(self):
        error = FilterError("Test error", details="Additional context")
        assert error.details == "Additional context"
        assert str(error) == "Test error: Additional context"

    def test_format_message_without_details(self):
        assert FilterError("Test error")._format_message() == "Test error"


class TestHierarchy:
    """Each error belongs to exactly one of the input, solver and synthesis families."""

    @pytest.mark.parametrize("cls", [DimensionMismatch, ModelParseError])
    def test_input_errors(self, cls):
        error = cls("bad")
        assert isinstance(error, ValidationError)
        assert not isinstance(error, (SolverError, SynthesisError))

    @pytest.mark.parametrize(
        "cls",
        [
            NoStabilizingSolution,
            SingularInnovation,
            UnstableOperator,
            UnstablePair,
            SingularResolvent,
            NonConvergedQuadrature,
        ],
    )
    def test_solver_errors(self, cls):
        error = cls("failed")
        assert isinstance(error, SolverError)
        assert isinstance(error, FilterError)
        assert not isinstance(error, SynthesisError)

    @pytest.mark.parametrize("cls", [IndefiniteRQ, BracketFailure, SingularPencil, Infeasible])
    def test_synthesis_errors(self, cls):
        error = cls("failed")
        assert isinstance(error, SynthesisError)
        assert not isinstance(error, SolverError)

    def test_configuration_error_is_not_validation(self):
        assert not isinstance(ConfigurationError("x"), ValidationError)

    def test_single_except_clause_catches_everything(self):
        with pytest.raises(FilterError):
            raise SingularPencil("degenerate")


class TestErrorHelpers:
    """Test error description and suggestion helpers."""

    def test_description_known(self):
        assert get_error_description(UnstableOperator("rho")) == (
            "Stein equation operator is not strictly stable"
        )

    def test_description_unknown(self):
        assert get_error_description(RuntimeError("x")) == "Unknown error type"

    def test_subclass_suggestion_wins(self):
        assert "F, G, H, L" in get_error_suggestion(ModelParseError("x"))
        assert "n x n" in get_error_suggestion(DimensionMismatch("x"))

    def test_suggestions_for_synthesis(self):
        assert get_error_suggestion(SingularPencil("x")) == "Retry with a slightly larger gamma"
        assert get_error_suggestion(IndefiniteRQ("x")) == "Increase gamma"

    def test_generic_solver_suggestion(self):
        assert get_error_suggestion(SolverError("x")) == "Check model conditioning"

    def test_no_suggestion_for_foreign_errors(self):
        assert get_error_suggestion(KeyError("x")) is None

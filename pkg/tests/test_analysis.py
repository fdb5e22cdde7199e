"""Tests for grids, norms, curve export and the tap-energy split."""

import numpy as np
import pytest

from analysis import (
    CURVE_COLUMNS,
    MIN_GRID_COUNT,
    FrequencyGrid,
    FrequencyMatched,
    NormReport,
    anticausal_fraction,
    causal_fraction,
    curves_text,
    evaluate,
    export_curves,
    frobenius_norm_sq,
    operator_norm_sq,
    read_curves,
    regret_norm,
    tap_energies,
)
from config import Settings
from exceptions import NonConvergedQuadrature, ValidationError
from state_space import LtiFilter
from synthesis import kalman_filter

# (1/2 pi) ∫ 1 / (2.81 - 1.8 cos w) dw
NONCAUSAL_FROBENIUS = 1.0 / np.sqrt(2.81**2 - 1.8**2)


def _report(label, omegas, curve):
    return NormReport(
        label=label,
        frobenius_sq=1.0,
        operator_sq=float(curve.max()),
        regret=0.0,
        argmax_omega=0.0,
        omegas=omegas,
        operator_curve=curve,
        regret_curve=0.5 * curve,
    )


class TestFrequencyGrid:
    def test_midpoints(self):
        grid = FrequencyGrid(64)
        assert grid.omegas[0] == pytest.approx(np.pi / 64)
        assert grid.omegas[-1] == pytest.approx(2 * np.pi - np.pi / 64)
        assert not np.any(np.isclose(grid.omegas, np.pi))
        assert grid.step == pytest.approx(2 * np.pi / 64)

    def test_refined(self):
        assert FrequencyGrid(64).refined().count == 128

    @pytest.mark.parametrize("count", [32, 100, 0, 1.5, True])
    def test_rejects(self, count):
        with pytest.raises(ValidationError):
            FrequencyGrid(count)

    def test_minimum(self):
        assert FrequencyGrid(MIN_GRID_COUNT).count == 64

    def test_from_settings(self):
        settings = Settings()
        settings.grid.count = 256
        assert FrequencyGrid.from_settings(settings).count == 256


class TestNorms:
    def test_zero_filter_frobenius(self, scalar):
        # sum_k (L F^k G)^2 = 1 / (1 - 0.81)
        value = frobenius_norm_sq(scalar, LtiFilter.zero(1, 1), FrequencyGrid(256))
        assert value == pytest.approx(1 / 0.19, rel=1e-5)
        assert value == pytest.approx(5.263, abs=1e-3)

    def test_noncausal_scalar(self, scalar):
        grid = FrequencyGrid(1024)
        assert frobenius_norm_sq(scalar, FrequencyMatched(), grid) == pytest.approx(
            NONCAUSAL_FROBENIUS, rel=1e-5
        )
        peak, omega = operator_norm_sq(scalar, FrequencyMatched(), grid)
        assert peak == pytest.approx(1 / 1.01, rel=1e-6)
        assert min(omega, 2 * np.pi - omega) <= 1e-3
        regret, curve = regret_norm(scalar, FrequencyMatched(), grid)
        assert regret <= 1e-10
        assert curve.shape == (1024,)

    def test_kalman_scalar(self, scalar):
        report = evaluate(scalar, kalman_filter(scalar), FrequencyGrid(2048))
        assert report.label == "h2"
        assert report.frobenius_sq == pytest.approx(0.6, abs=0.02)
        assert report.operator_sq == pytest.approx(1.27, abs=0.02)
        assert report.regret == pytest.approx(0.7, abs=0.02)

    def test_kalman_frobenius_is_filtered_variance(self, scalar, settings):
        # filtered error variance P - P^2 / (1 + P) = P / (1 + P)
        P = (0.81 + np.sqrt(0.81**2 + 4.0)) / 2.0
        value = frobenius_norm_sq(scalar, kalman_filter(scalar), settings=settings)
        assert value == pytest.approx(P / (1 + P), rel=1e-5)

    def test_peak_refinement_beats_grid(self, scalar):
        grid = FrequencyGrid(64)
        report = evaluate(scalar, LtiFilter.zero(1, 1), grid)
        assert report.operator_sq >= report.operator_curve.max()
        assert report.operator_sq == pytest.approx(100.0, rel=1e-4)

    def test_quadrature_cap(self, scalar):
        settings = Settings()
        settings.grid.max_count = 64
        with pytest.raises(NonConvergedQuadrature):
            frobenius_norm_sq(scalar, LtiFilter.zero(1, 1), FrequencyGrid(64), settings)

    def test_report_dict(self, scalar):
        report = evaluate(scalar, FrequencyMatched(), FrequencyGrid(64), label="noncausal")
        assert set(report.to_dict()) == {
            "label",
            "frobenius_sq",
            "operator_sq",
            "regret",
            "argmax_omega",
        }
        np.testing.assert_array_equal(report.curve("regret"), report.regret_curve)


class TestCurveExport:
    def test_header_order(self):
        omegas = FrequencyGrid(64).omegas
        reports = [_report("noncausal", omegas, np.ones(64)), _report("h2", omegas, np.ones(64))]
        text = curves_text(reports)
        assert text.splitlines()[0] == "omega,h2,noncausal"
        assert len(text.splitlines()) == 65
        assert "\r" not in text

    def test_empty_reports_give_header(self):
        assert curves_text([]) == "omega," + ",".join(CURVE_COLUMNS) + "\n"

    def test_rejects_unknown_label(self):
        omegas = FrequencyGrid(64).omegas
        with pytest.raises(ValidationError, match="Unknown curve label"):
            curves_text([_report("kalman", omegas, np.ones(64))])

    def test_rejects_duplicates_and_grids(self):
        a = FrequencyGrid(64).omegas
        b = FrequencyGrid(128).omegas
        with pytest.raises(ValidationError, match="Duplicate"):
            curves_text([_report("h2", a, np.ones(64)), _report("h2", a, np.ones(64))])
        with pytest.raises(ValidationError, match="different grids"):
            curves_text([_report("h2", a, np.ones(64)), _report("hinf", b, np.ones(128))])

    def test_rejects_unknown_quantity(self):
        with pytest.raises(ValidationError):
            curves_text([], quantity="phase")

    def test_export_and_read(self, tmp_path):
        omegas = FrequencyGrid(64).omegas
        curve = np.linspace(0.1, 2.0, 64)
        path = tmp_path / "curves.csv"
        export_curves([_report("regret_opt", omegas, curve)], path, quantity="regret")
        columns = read_curves(path)
        assert list(columns) == ["omega", "regret_opt"]
        np.testing.assert_array_equal(columns["omega"], omegas)
        np.testing.assert_array_equal(columns["regret_opt"], 0.5 * curve)

    def test_read_malformed(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("omega,h2\n0.1,abc\n", encoding="utf-8")
        with pytest.raises(ValidationError, match="Malformed"):
            read_curves(path)


class TestCausality:
    OMEGAS = FrequencyGrid(64).omegas

    def test_causal_transfer(self):
        samples = (1.0 / (1.0 - 0.5 * np.exp(-1j * self.OMEGAS))).reshape(-1, 1, 1)
        causal, anticausal = tap_energies(samples)
        assert causal == pytest.approx(1.0 / (1.0 - 0.25), rel=1e-12)
        assert anticausal <= 1e-15
        assert causal_fraction(samples) == pytest.approx(1.0)

    def test_anticausal_transfer(self):
        samples = (np.exp(1j * self.OMEGAS) / (1.0 - 0.5 * np.exp(1j * self.OMEGAS)))
        samples = samples.reshape(-1, 1, 1)
        assert anticausal_fraction(samples) == pytest.approx(1.0)

    def test_zero_signal(self):
        assert causal_fraction(np.zeros((64, 1, 1))) == 0.0

    def test_odd_length(self):
        with pytest.raises(ValidationError):
            tap_energies(np.ones((63, 1, 1)))


@pytest.mark.slow
class TestScalarOrdering:
    def test_orderings(self, scalar):
        from baselines import hinf_optimal
        from synthesis import synthesize

        grid = FrequencyGrid(2048)
        h2 = evaluate(scalar, kalman_filter(scalar), grid)
        _, filt = hinf_optimal(scalar)
        hinf = evaluate(scalar, filt, grid)
        regret_opt = evaluate(scalar, synthesize(scalar).filter, grid)
        assert h2.frobenius_sq <= regret_opt.frobenius_sq <= hinf.frobenius_sq
        assert hinf.operator_sq <= regret_opt.operator_sq <= h2.operator_sq
        assert regret_opt.regret <= min(h2.regret, hinf.regret)
        assert regret_opt.regret == pytest.approx(0.38, abs=0.02)

"""Numerical identity checks on a synthesis result.

Groups:
    factorization   spectral factors reproduce their defining products
    decomposition   anticausal/causal split of the regret target
    certificate     optimality of the assembled filter at gamma*
"""

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from analysis import (
    FrequencyGrid,
    anticausal_fraction,
    causal_fraction,
    regret_norm,
)
from config import Settings, get_default_settings
from linalg_core import spectral_radius
from state_space import StateSpaceModel, eval_plant_channels_batch, eval_transfer_batch
from synthesis import (
    GammaWorkspace,
    SynthesisResult,
    build_workspace,
    causal_anticausal_split_batch,
    causal_correction,
    delta_factor_batch,
    existence_check,
    nabla_factor_batch,
    nehari_gap_batch,
    regret_filter_response_batch,
)

from .base import BaseChecker, CheckerRegistry, CheckerReport

IDENTITY_TOL = 1e-8
INVERSE_TOL = 1e-10
CAUSAL_ENERGY_TOL = 1e-8
NEHARI_SLACK = 1e-6
REGRET_UPPER_SLACK = 1e-6
REGRET_LOWER_SLACK = 1e-4
RIPPLE_LIMIT = 0.05
SIGMA_WINDOW = 1e-5


def _herm(X: np.ndarray) -> np.ndarray:
    return np.conj(np.swapaxes(X, -1, -2))


def max_relative_gap(
    value: np.ndarray, target: np.ndarray, scale: np.ndarray | None = None
) -> float:
    """max_k ||value_k - target_k|| / max(1, scale_k) over a batch of matrices."""
    gap = np.linalg.norm(value - target, axis=(-2, -1))
    ref = np.linalg.norm(target, axis=(-2, -1)) if scale is None else scale
    return float(np.max(gap / np.maximum(ref, 1.0))) if gap.size else 0.0


@dataclass
class VerificationContext:
    """Inputs shared by the identity checks.

    Attributes:
        model: Plant.
        result: Synthesis result under test.
        settings: Solver and grid settings.
        identity_points: Grid size for pointwise identities.
        fft_points: Grid size for tap splits and norm certificates.
    """

    model: StateSpaceModel
    result: SynthesisResult
    settings: Settings = field(default_factory=get_default_settings)
    identity_points: int = 256
    fft_points: int = 2048

    @cached_property
    def identity_grid(self) -> FrequencyGrid:
        return FrequencyGrid(self.identity_points)

    @cached_property
    def fft_grid(self) -> FrequencyGrid:
        return FrequencyGrid(self.fft_points)

    @property
    def workspace(self) -> GammaWorkspace | None:
        return self.result.workspace

    def workspace_at(self, gamma: float) -> GammaWorkspace:
        ws = self.workspace
        return build_workspace(
            self.model, gamma, kalman=ws.kalman, Pi=ws.Pi, settings=self.settings
        )


class _SynthesisChecker(BaseChecker):
    """Skips on degenerate plants, which have no workspace."""

    context: VerificationContext

    def check(self) -> CheckerReport:
        if self.context.workspace is None:
            return self._skip("Degenerate plant: nothing to verify")
        return self.run()

    def run(self) -> CheckerReport:
        raise NotImplementedError


class DeltaFactorizationChecker(_SynthesisChecker):
    name = "delta_factorization"
    description = "Δ Δ* = I + H H* and Δ Δ^-1 = I on the grid"
    group = "factorization"

    def run(self) -> CheckerReport:
        ctx = self.context
        omegas = ctx.identity_grid.omegas
        delta, delta_inv = delta_factor_batch(ctx.model, omegas, ctx.workspace.kalman)
        H, _ = eval_plant_channels_batch(ctx.model, omegas)
        target = np.eye(ctx.model.m) + H @ _herm(H)
        product_gap = max_relative_gap(delta @ _herm(delta), target)
        eye = np.broadcast_to(np.eye(ctx.model.m), delta.shape)
        inverse_gap = max_relative_gap(delta @ delta_inv, eye)
        if product_gap <= IDENTITY_TOL and inverse_gap <= INVERSE_TOL:
            return self._pass(
                f"Δ factorization holds (gap {product_gap:.2e})",
                product_gap=product_gap,
                inverse_gap=inverse_gap,
            )
        return self._fail(
            "Δ factorization does not hold",
            f"product gap {product_gap:.3e}, inverse gap {inverse_gap:.3e}",
            ["Check the Kalman Riccati residual and the F_P convention"],
            product_gap=product_gap,
            inverse_gap=inverse_gap,
        )


class NablaFactorizationChecker(_SynthesisChecker):
    name = "nabla_factorization"
    description = "∇*∇ = gamma^-2 (I + gamma^-2 L (I + H*H)^-1 L*) at gamma* and 2 gamma*"
    group = "factorization"

    def _gaps(self, ws: GammaWorkspace) -> tuple[float, float]:
        ctx = self.context
        model, omegas = ctx.model, ctx.identity_grid.omegas
        nabla, nabla_inv = nabla_factor_batch(model, ws, omegas)
        H, L = eval_plant_channels_batch(model, omegas)
        g2 = ws.gamma**-2
        inner = np.linalg.solve(np.eye(model.q) + _herm(H) @ H, _herm(L))
        target = g2 * (np.eye(model.p) + g2 * L @ inner)
        eye = np.broadcast_to(np.eye(model.p), nabla.shape)
        return (
            max_relative_gap(_herm(nabla) @ nabla, target),
            max_relative_gap(nabla @ nabla_inv, eye),
        )

    def run(self) -> CheckerReport:
        ctx = self.context
        doubled = ctx.workspace_at(2 * ctx.workspace.gamma)
        gaps = {"gamma*": self._gaps(ctx.workspace), "2 gamma*": self._gaps(doubled)}
        product_gap = max(g[0] for g in gaps.values())
        inverse_gap = max(g[1] for g in gaps.values())
        if product_gap <= IDENTITY_TOL and inverse_gap <= INVERSE_TOL:
            return self._pass(
                f"∇ factorization holds (gap {product_gap:.2e})",
                product_gap=product_gap,
                inverse_gap=inverse_gap,
            )
        return self._fail(
            "∇ factorization does not hold",
            ", ".join(f"{k}: {v[0]:.3e}/{v[1]:.3e}" for k, v in gaps.items()),
            ["Check the Q Riccati equation's quadratic term and the W solution"],
            product_gap=product_gap,
            inverse_gap=inverse_gap,
        )


class SplitSumChecker(_SynthesisChecker):
    name = "split_sum"
    description = "T + S = ∇ L H* Δ^-* on the grid"
    group = "decomposition"

    def run(self) -> CheckerReport:
        ctx = self.context
        model, ws, omegas = ctx.model, ctx.workspace, ctx.identity_grid.omegas
        T, S = causal_anticausal_split_batch(model, ws, omegas)
        nabla, _ = nabla_factor_batch(model, ws, omegas)
        _, delta_inv = delta_factor_batch(model, omegas, ws.kalman)
        H, L = eval_plant_channels_batch(model, omegas)
        target = nabla @ L @ _herm(H) @ _herm(delta_inv)
        scale = sum(np.linalg.norm(X, axis=(-2, -1)) for X in (target, T, S))
        gap = max_relative_gap(T + S, target, scale)
        return self._bound(gap, IDENTITY_TOL, "Split residual")


class CausalityChecker(_SynthesisChecker):
    name = "causality"
    description = "T is strictly anticausal and the causal part has no anticausal taps"
    group = "decomposition"

    def run(self) -> CheckerReport:
        ctx = self.context
        model, ws, omegas = ctx.model, ctx.workspace, ctx.fft_grid.omegas
        T, S = causal_anticausal_split_batch(model, ws, omegas)
        t_causal = causal_fraction(T)
        if spectral_radius(model.F) < 1.0:
            s_label, s_anti = "S", anticausal_fraction(S)
        else:
            # S carries the plant poles; only its U-dependent line is summable
            s_label = "S_c"
            s_anti = anticausal_fraction(eval_transfer_batch(causal_correction(model, ws), omegas))
        metadata = {"t_causal_fraction": t_causal, f"{s_label}_anticausal_fraction": s_anti}
        if t_causal <= CAUSAL_ENERGY_TOL and s_anti <= CAUSAL_ENERGY_TOL:
            return self._pass(
                f"Tap split clean (T {t_causal:.1e}, {s_label} {s_anti:.1e})", **metadata
            )
        return self._fail(
            "Tap split shows leakage",
            f"T causal {t_causal:.3e}, {s_label} anticausal {s_anti:.3e}",
            ["Check the U equation and the sign of the anticausal realization"],
            **metadata,
        )


class NehariCertificateChecker(_SynthesisChecker):
    name = "nehari_certificate"
    description = "||K_N - T|| <= 1 at gamma*"
    group = "certificate"

    def run(self) -> CheckerReport:
        ctx = self.context
        gap = nehari_gap_batch(ctx.model, ctx.workspace, ctx.result.nehari, ctx.fft_grid.omegas)
        return self._bound(float(np.max(gap)), 1.0 + NEHARI_SLACK, "Approximation error")


class RegretCertificateChecker(_SynthesisChecker):
    name = "regret_certificate"
    description = "Regret of the assembled filter equals gamma*^2 and is near-flat"
    group = "certificate"

    def run(self) -> CheckerReport:
        ctx = self.context
        value, curve = regret_norm(ctx.model, ctx.result.filter, ctx.fft_grid, ctx.settings)
        target = ctx.result.regret
        # relative spread of the regret spectrum; the optimum is near-equiripple
        peak = float(np.max(curve))
        ripple = float(np.ptp(curve)) / peak if peak > 0 else 0.0
        metadata = {"regret": value, "gamma_star_sq": target, "ripple": ripple}
        if not target - REGRET_LOWER_SLACK <= value <= target + REGRET_UPPER_SLACK:
            return self._fail(
                f"Regret {value:.9f} differs from gamma*^2 {target:.9f}",
                suggestions=["Tighten the bisection tolerance or check the 3n assembly"],
                **metadata,
            )
        if ripple > RIPPLE_LIMIT:
            return self._fail(
                f"Regret spectrum ripple {ripple:.3e} exceeds {RIPPLE_LIMIT}",
                suggestions=["Check the Nehari constants at gamma*"],
                **metadata,
            )
        return self._pass(
            f"Regret {value:.9f} matches gamma*^2 {target:.9f}, ripple {ripple:.2e}", **metadata
        )


class RealizationConsistencyChecker(_SynthesisChecker):
    name = "realization_consistency"
    description = "3n realization matches the factor-by-factor form"
    group = "certificate"

    def run(self) -> CheckerReport:
        ctx = self.context
        model, filt = ctx.model, ctx.result.filter
        if filt.dim != 3 * model.n:
            return self._fail(f"Filter dimension {filt.dim}, expected {3 * model.n}")
        rho = filt.spectral_radius
        if rho >= 1.0:
            return self._fail(f"Filter is not stable (rho = {rho:.12g})")
        omegas = ctx.identity_grid.omegas
        direct = eval_transfer_batch(filt, omegas)
        factored = regret_filter_response_batch(model, ctx.workspace, ctx.result.nehari, omegas)
        gap = max_relative_gap(direct, factored)
        if gap <= IDENTITY_TOL:
            return self._pass(f"Realizations agree (gap {gap:.2e})", gap=gap, rho=rho)
        return self._fail(f"Realizations differ (gap {gap:.3e})", gap=gap, rho=rho)


class ExistenceStatisticChecker(_SynthesisChecker):
    name = "existence_statistic"
    description = "Statistic sits at 1 at gamma* and crosses 1 around it"
    group = "certificate"

    def run(self) -> CheckerReport:
        ctx = self.context
        gamma = ctx.result.gamma_star
        sigma = ctx.result.sigma
        kalman, Pi = ctx.workspace.kalman, ctx.workspace.Pi
        below = existence_check(ctx.model, 0.99 * gamma, kalman, Pi, ctx.settings)
        above = existence_check(ctx.model, 1.01 * gamma, kalman, Pi, ctx.settings)
        metadata = {"sigma": sigma, "sigma_below": below.sigma, "sigma_above": above.sigma}
        at_one = sigma is not None and 1.0 - SIGMA_WINDOW <= sigma <= 1.0
        if at_one and not below.passed and above.passed:
            return self._pass(f"Statistic {sigma:.9f} at gamma*", **metadata)
        return self._fail(
            "Statistic does not bracket 1 at gamma*",
            f"sigma {sigma}, below {below.sigma} ({below.failure}), above {above.sigma}",
            **metadata,
        )


IDENTITY_CHECKERS = (
    DeltaFactorizationChecker,
    NablaFactorizationChecker,
    SplitSumChecker,
    CausalityChecker,
    NehariCertificateChecker,
    RegretCertificateChecker,
    RealizationConsistencyChecker,
    ExistenceStatisticChecker,
)


def default_registry() -> CheckerRegistry:
    registry = CheckerRegistry()
    for checker_cls in IDENTITY_CHECKERS:
        registry.register(checker_cls)
    return registry


def run_verification(context: VerificationContext) -> list[CheckerReport]:
    """Run every identity check against one synthesis result."""
    return default_registry().run_all(context)

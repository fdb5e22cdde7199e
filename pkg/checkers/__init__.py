"""Verification checks for synthesized filters and reference tables."""

from .base import BaseChecker, CheckerRegistry, CheckerReport, CheckResult
from .identities import (
    IDENTITY_CHECKERS,
    CausalityChecker,
    DeltaFactorizationChecker,
    ExistenceStatisticChecker,
    NablaFactorizationChecker,
    NehariCertificateChecker,
    RealizationConsistencyChecker,
    RegretCertificateChecker,
    SplitSumChecker,
    VerificationContext,
    default_registry,
    max_relative_gap,
    run_verification,
)
from .reproduction import (
    ESTIMATORS,
    KNOWN_DEVIATIONS,
    METRICS,
    TABLE_TARGETS,
    CellSpec,
    ReproductionCellChecker,
    anchor_failed,
    compute_reports,
    reproduction_cells,
    table_model,
    table_tolerance,
)

__all__ = [
    "BaseChecker",
    "CheckerRegistry",
    "CheckerReport",
    "CheckResult",
    "VerificationContext",
    "IDENTITY_CHECKERS",
    "DeltaFactorizationChecker",
    "NablaFactorizationChecker",
    "SplitSumChecker",
    "CausalityChecker",
    "NehariCertificateChecker",
    "RegretCertificateChecker",
    "RealizationConsistencyChecker",
    "ExistenceStatisticChecker",
    "default_registry",
    "max_relative_gap",
    "run_verification",
    "ESTIMATORS",
    "KNOWN_DEVIATIONS",
    "METRICS",
    "TABLE_TARGETS",
    "CellSpec",
    "ReproductionCellChecker",
    "compute_reports",
    "reproduction_cells",
    "anchor_failed",
    "table_model",
    "table_tolerance",
]

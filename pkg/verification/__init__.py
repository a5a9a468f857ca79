"""
Verification module for MLCM.
Complete-monotonicity certificates, cross-validation of the series, Pollard
and spectral routes, Laplace identities and the named suites behind the CLI.
"""

from verification.harness import (
    EvaluationError,
    bernstein_composition_check,
    check_complete_monotonicity,
    check_laplace_identity,
    compare_values,
    cross_validate,
    limit_convergence_report,
    radon_nikodym_report,
    spectral_sign_report,
)
from verification.reports import (
    CaseRecord,
    CMCertificate,
    LimitReport,
    LimitRow,
    SuiteResult,
    TableauRow,
    ValidationReport,
    Violation,
)
from verification.suites import SUITE_NAMES, run_suite

__all__ = [
    "EvaluationError",
    "check_complete_monotonicity",
    "cross_validate",
    "compare_values",
    "check_laplace_identity",
    "bernstein_composition_check",
    "limit_convergence_report",
    "spectral_sign_report",
    "radon_nikodym_report",
    "CaseRecord",
    "ValidationReport",
    "Violation",
    "TableauRow",
    "CMCertificate",
    "LimitRow",
    "LimitReport",
    "SuiteResult",
    "SUITE_NAMES",
    "run_suite",
]

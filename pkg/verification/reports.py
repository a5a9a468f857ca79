# verification/reports.py

"""
Serialisable verification artefacts.

Reports are pydantic models so the CLI can emit them as JSON and the run
history can store them without custom encoders.
"""

from typing import Dict, List, Optional

from pydantic import BaseModel, ConfigDict, computed_field


class CaseRecord(BaseModel):
    """One grid point of a cross-validation: every route's value and the spread."""

    model_config = ConfigDict(frozen=True)

    inputs: Dict[str, float]
    route_values: Dict[str, Optional[float]]
    max_discrepancy: Optional[float]
    tolerance: float
    passed: bool
    error: Optional[str] = None


class ValidationReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    suite_name: str
    reference: str
    tolerances: Dict[str, float]
    cases: List[CaseRecord]
    notes: List[str] = []

    @computed_field
    @property
    def passed(self) -> bool:
        return bool(self.cases) and all(case.passed for case in self.cases)

    @computed_field
    @property
    def failed_count(self) -> int:
        return sum(1 for case in self.cases if not case.passed)

    @computed_field
    @property
    def worst_case(self) -> Optional[CaseRecord]:
        """A failed evaluation if there is one, else the largest discrepancy."""
        if not self.cases:
            return None
        broken = [case for case in self.cases if case.max_discrepancy is None]
        if broken:
            return broken[0]
        return max(self.cases, key=lambda case: case.max_discrepancy)


class Violation(BaseModel):
    model_config = ConfigDict(frozen=True)

    order: int
    index: int
    x: float
    value: float


class TableauRow(BaseModel):
    """Summary of (-1)^k Delta^k f over the grid for one order k."""

    model_config = ConfigDict(frozen=True)

    order: int
    min_signed_difference: float
    violations: int


class CMCertificate(BaseModel):
    model_config = ConfigDict(frozen=True)

    label: str
    grid: List[float]
    max_order: int
    tolerance: float
    tableau: List[TableauRow]
    violations: List[Violation]

    @computed_field
    @property
    def passed(self) -> bool:
        return not self.violations


class LimitRow(BaseModel):
    model_config = ConfigDict(frozen=True)

    mu: float
    n: int
    value: float
    error: float


class LimitReport(BaseModel):
    """Convergence of (n/mu) m(x | mu/n, lambda) to Gamma(gamma) x^(beta-1) E."""

    model_config = ConfigDict(frozen=True)

    params: Dict[str, float]
    reference: float
    rows: List[LimitRow]
    extrapolated: Dict[str, float]
    extrapolated_errors: Dict[str, float]
    observed_orders: Dict[str, Optional[float]]
    error_tolerance: float
    agreement_tolerance: float
    shrinking: bool
    mu_spread: float

    @computed_field
    @property
    def passed(self) -> bool:
        return (
            self.shrinking
            and all(err <= self.error_tolerance for err in self.extrapolated_errors.values())
            and self.mu_spread <= self.agreement_tolerance
        )


class SuiteResult(BaseModel):
    """Everything one named suite produced."""

    model_config = ConfigDict(frozen=True)

    suite: str
    reports: List[ValidationReport] = []
    certificates: List[CMCertificate] = []
    limit_reports: List[LimitReport] = []

    @computed_field
    @property
    def passed(self) -> bool:
        checks = [r.passed for r in self.reports]
        checks += [c.passed for c in self.certificates]
        checks += [l.passed for l in self.limit_reports]
        return bool(checks) and all(checks)

    @computed_field
    @property
    def check_count(self) -> int:
        return len(self.reports) + len(self.certificates) + len(self.limit_reports)

    @computed_field
    @property
    def failed_checks(self) -> List[str]:
        failed = [r.suite_name for r in self.reports if not r.passed]
        failed += [c.label for c in self.certificates if not c.passed]
        failed += [f"limit {l.params}" for l in self.limit_reports if not l.passed]
        return failed

    def worst_discrepancy(self) -> Optional[float]:
        values = [
            r.worst_case.max_discrepancy
            for r in self.reports
            if r.worst_case is not None and r.worst_case.max_discrepancy is not None
        ]
        return max(values) if values else None

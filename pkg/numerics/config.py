# numerics/config.py

from dataclasses import dataclass, replace
from typing import Optional, Union

import numpy as np

ArrayLike = Union[float, np.ndarray]


@dataclass(frozen=True)
class QuadratureConfig:
    """Tolerances and budgets for one quadrature or series evaluation.

    Args:
        abs_tol: absolute error target.
        rel_tol: relative error target, applied to |value|.
        max_refinements: number of step halvings after the coarsest level.
        max_evaluations: hard cap on integrand calls (or series terms).
        min_refinements: level from which convergence may be declared.
    """

    abs_tol: float = 1e-10
    rel_tol: float = 1e-10
    max_refinements: int = 12
    max_evaluations: int = 10**6
    min_refinements: int = 3

    def __post_init__(self):
        if self.abs_tol < 0 or self.rel_tol < 0:
            raise ValueError("tolerances must be non-negative")
        if self.abs_tol == 0 and self.rel_tol == 0:
            raise ValueError("at least one tolerance must be positive")
        if self.max_refinements < 1:
            raise ValueError("max_refinements must be >= 1")
        if not 1 <= self.min_refinements <= self.max_refinements:
            raise ValueError("min_refinements must lie in [1, max_refinements]")
        if self.max_evaluations < 1:
            raise ValueError("max_evaluations must be >= 1")

    def tolerance_for(self, value: ArrayLike) -> ArrayLike:
        """Error allowed for an estimate of size `value`."""
        return np.maximum(self.abs_tol, self.rel_tol * np.abs(value))

    def scaled(self, factor: float) -> "QuadratureConfig":
        """Same budgets with both tolerances multiplied by `factor`."""
        return replace(self, abs_tol=self.abs_tol * factor, rel_tol=self.rel_tol * factor)


DEFAULT_CONFIG = QuadratureConfig()


@dataclass(frozen=True)
class IntegralResult:
    value: float
    error_estimate: float
    evaluations: int
    converged: bool
    max_term: Optional[float] = None


@dataclass(frozen=True)
class BatchIntegralResult:
    """Array counterpart of IntegralResult for a batch of problems."""

    values: np.ndarray
    errors: np.ndarray
    evaluations: int
    converged: np.ndarray
    max_term: Optional[np.ndarray] = None

    @property
    def all_converged(self) -> bool:
        return bool(np.all(self.converged))

    def item(self) -> IntegralResult:
        """Collapse a batch of shape () into a scalar IntegralResult."""
        max_term = None if self.max_term is None else float(np.max(self.max_term))
        return IntegralResult(
            value=float(self.values),
            error_estimate=float(self.errors),
            evaluations=self.evaluations,
            converged=bool(self.converged),
            max_term=max_term,
        )

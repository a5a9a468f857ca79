# numerics/series.py

"""
Compensated summation of convergent series.

Terms are accumulated with Neumaier's variant of the TwoSum error-free
transformation, elementwise when the term callable returns arrays.
"""

import logging
from typing import Callable, Optional, Union

import numpy as np

from numerics.config import BatchIntegralResult, IntegralResult, QuadratureConfig
from numerics.errors import SeriesOverflowError

logger = logging.getLogger(__name__)

SERIES_CONFIG = QuadratureConfig(abs_tol=1e-16, rel_tol=1e-15, max_evaluations=100_000)

# Minimum number of terms before the tail test may stop the sum.
MIN_TERMS = 4


class CompensatedSum:
    """Running sum with a separate compensation term (Neumaier).

    Works on floats and on numpy arrays of a fixed shape.
    """

    def __init__(self, shape=()):
        self.total = np.zeros(shape)
        self.compensation = np.zeros(shape)

    def add(self, term) -> None:
        term = np.asarray(term, dtype=float)
        t = self.total + term
        big = np.abs(self.total) >= np.abs(term)
        self.compensation = self.compensation + np.where(
            big, (self.total - t) + term, (term - t) + self.total
        )
        self.total = t

    @property
    def value(self):
        return self.total + self.compensation


def sum_series(
    term: Callable[[int], Union[float, np.ndarray]],
    cfg: Optional[QuadratureConfig] = None,
    start: int = 0,
) -> Union[IntegralResult, BatchIntegralResult]:
    """Sum term(start) + term(start + 1) + ... to tolerance.

    The sum stops once the magnitudes of the last two terms add up to less
    than cfg.tolerance_for(partial sum) and that envelope is no longer
    growing. Zero terms (for example sin(pi*k/2) at even k) are harmless.

    Args:
        term: k -> term value, scalar or array (one entry per problem).
        cfg: tolerances and term budget (max_evaluations).
        start: first index.

    Returns:
        IntegralResult for scalar terms, BatchIntegralResult for array terms.
        `error_estimate` is the tail bound and `max_term` the largest term
        magnitude seen, which measures cancellation.

    Raises:
        SeriesOverflowError: a term is inf or NaN.
    """
    cfg = cfg or SERIES_CONFIG
    first = np.asarray(term(start), dtype=float)
    scalar = first.ndim == 0
    acc = CompensatedSum(first.shape)

    previous_abs = np.zeros(first.shape)
    previous_envelope = np.full(first.shape, np.inf)
    max_term = np.zeros(first.shape)
    converged = np.zeros(first.shape, dtype=bool)
    tail = np.full(first.shape, np.inf)

    k = start
    value = first
    count = 0
    while count < cfg.max_evaluations:
        if not np.all(np.isfinite(value)):
            raise SeriesOverflowError(k)
        acc.add(value)
        count += 1
        current_abs = np.abs(value)
        max_term = np.maximum(max_term, current_abs)
        tail = current_abs + previous_abs
        if count >= MIN_TERMS:
            converged = (tail <= cfg.tolerance_for(acc.value)) & (tail <= previous_envelope)
            if np.all(converged):
                break
        previous_envelope = tail
        previous_abs = current_abs
        k += 1
        value = np.asarray(term(k), dtype=float)

    if not np.all(converged):
        logger.debug("series stopped after %d terms without meeting tolerance", count)

    if scalar:
        return IntegralResult(
            value=float(acc.value),
            error_estimate=float(tail),
            evaluations=count,
            converged=bool(converged),
            max_term=float(max_term),
        )
    return BatchIntegralResult(
        values=acc.value,
        errors=tail,
        evaluations=count,
        converged=converged,
        max_term=max_term,
    )

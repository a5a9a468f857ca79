# mittag_engine/mittag_leffler.py

"""
Three-parameter Mittag-Leffler function by its power series.

    E^gamma_{alpha,beta}(x) = sum_k (gamma)_k / k! * x^k / Gamma(alpha k + beta)

For negative x the terms alternate and peak far above the result, so the
largest term is located first (in log space) and the sum is done in double
precision only when that peak is small. Larger peaks are summed in a local
mpmath context with enough digits to absorb the cancellation.
"""

import logging
from typing import Optional, Tuple

import mpmath
import numpy as np
from scipy.special import gammaln

from mittag_engine.errors import DomainError, SeriesCancellationError
from mittag_engine.params import MLParams, RatePair
from numerics import IntegralResult, QuadratureConfig, integrate_semi_infinite, sum_series
from numerics.errors import SeriesDivergenceError, SeriesOverflowError
from numerics.series import SERIES_CONFIG

logger = logging.getLogger(__name__)

X_MAX = 50.0
# Largest term (log10) still summed in double precision.
DOUBLE_BUDGET_LOG10 = 3.0
GUARD_DIGITS = 20
MAX_DIGITS = 900
# Terms below exp(TAIL_LOG) no longer matter after the peak.
TAIL_LOG = -55.0
MAX_SCAN_TERMS = 2_000_000

LAPLACE_CONFIG = QuadratureConfig(abs_tol=1e-12, rel_tol=1e-10)
DECAY_CUTOFF = 46.0

_LN10 = np.log(10.0)


def _log_terms(p: MLParams, x: float) -> Tuple[np.ndarray, np.ndarray]:
    """Natural logs of |term_k| and the Pochhammer ratios, up to the tail cut."""
    log_x = np.log(abs(x))
    size = 256
    while True:
        k = np.arange(size, dtype=float)
        log_poch = gammaln(p.gamma + k) - gammaln(p.gamma) - gammaln(k + 1.0)
        logs = log_poch + k * log_x - gammaln(p.alpha * k + p.beta)
        peak = int(np.argmax(logs))
        past_peak = logs[peak:]
        done = (
            peak < size - 1
            and past_peak[-1] < min(logs[peak] - 60.0, TAIL_LOG)
            and past_peak[-1] < past_peak[-2]
        )
        if done:
            below = np.nonzero(past_peak < min(logs[peak] - 60.0, TAIL_LOG))[0]
            cut = peak + int(below[0]) + 1
            return logs[:cut], log_poch[:cut]
        if size > MAX_SCAN_TERMS:
            log10_max = float(logs[peak] / _LN10)
            if x < 0:
                raise SeriesCancellationError(
                    f"series terms at x={x} still grow after {size} terms", log10_max_term=log10_max
                )
            raise SeriesDivergenceError(f"series terms for x={x} still grow after {size} terms")
        size *= 4


def _double_sum(p: MLParams, x: float, cfg: QuadratureConfig, count: int) -> IntegralResult:
    k = np.arange(count, dtype=float)
    ratios = np.ones(count)
    ratios[1:] = (p.gamma + k[1:] - 1.0) / k[1:]
    poch = np.cumprod(ratios)
    sign = np.where(k % 2 == 1, np.sign(x), 1.0)
    with np.errstate(under="ignore", over="ignore"):
        scaled_power = np.exp(k * np.log(abs(x)) - gammaln(p.alpha * k + p.beta))
    terms = sign * poch * scaled_power

    def term(index: int) -> float:
        return float(terms[index]) if index < count else 0.0

    return sum_series(term, cfg)


def _mp_sum(p: MLParams, x: float, count: int, digits: int) -> float:
    ctx = mpmath.MPContext()
    ctx.dps = digits
    alpha, beta, gamma = ctx.mpf(p.alpha), ctx.mpf(p.beta), ctx.mpf(p.gamma)
    xm = ctx.mpf(x)
    poch = ctx.mpf(1)
    power = ctx.mpf(1)
    terms = []
    for k in range(count):
        if k:
            poch = poch * (gamma + k - 1) / k
            power = power * xm
        terms.append(poch * power * ctx.rgamma(alpha * k + beta))
    return float(ctx.fsum(terms))


def ml_series_result(p: MLParams, x: float, cfg: Optional[QuadratureConfig] = None) -> IntegralResult:
    """Series evaluation with diagnostics.

    Returns:
        IntegralResult whose `max_term` is the largest term magnitude, i.e.
        the cancellation the summation had to absorb.

    Raises:
        DomainError: alpha = 0 with |x| >= 1 (geometric divergence).
        SeriesCancellationError: |x| > X_MAX, or the cancellation would need
            more than MAX_DIGITS digits.
        SeriesOverflowError: positive x whose value overflows.
    """
    cfg = cfg or SERIES_CONFIG
    x = float(x)
    if not np.isfinite(x):
        raise DomainError(f"x must be finite, got {x}")
    if x == 0.0:
        value = float(np.exp(-gammaln(p.beta)))
        return IntegralResult(value=value, error_estimate=0.0, evaluations=1, converged=True, max_term=abs(value))
    if p.alpha == 0.0 and abs(x) >= 1.0:
        raise DomainError("E_0 series converges only for |x| < 1")
    if abs(x) > X_MAX:
        raise SeriesCancellationError(
            f"|x| = {abs(x)} exceeds the series limit {X_MAX}", log10_max_term=float("inf")
        )

    logs, _ = _log_terms(p, x)
    log10_max = float(np.max(logs) / _LN10)
    count = logs.size

    if x > 0:
        if log10_max > 307.0:
            raise SeriesOverflowError(int(np.argmax(logs)), f"E({x}) overflows double precision")
        return _double_sum(p, x, cfg, count)

    if log10_max <= DOUBLE_BUDGET_LOG10:
        return _double_sum(p, x, cfg, count)

    digits = GUARD_DIGITS + int(np.ceil(log10_max))
    if digits > MAX_DIGITS:
        raise SeriesCancellationError(f"series cancellation too large at x={x}", log10_max_term=log10_max)
    logger.debug("E series at x=%g: peak term 1e%.1f, summing with %d digits", x, log10_max, digits)
    value = _mp_sum(p, x, count, digits)
    return IntegralResult(
        value=value,
        error_estimate=abs(value) * 1e-16,
        evaluations=count,
        converged=True,
        max_term=10.0 ** log10_max if log10_max < 308 else float("inf"),
    )


def ml_series(p: MLParams, x: float, cfg: Optional[QuadratureConfig] = None) -> float:
    """E^gamma_{alpha,beta}(x) by its power series."""
    result = ml_series_result(p, x, cfg)
    if not result.converged:
        raise SeriesDivergenceError(f"Mittag-Leffler series did not converge at x={x}", result)
    return result.value


def ml_one(alpha: float, x: float) -> float:
    return ml_series(MLParams(alpha, 1.0, 1.0), x)


def ml_two(alpha: float, beta: float, x: float) -> float:
    return ml_series(MLParams(alpha, beta, 1.0), x)


def ml_laplace_closed(p: MLParams, r: RatePair) -> float:
    """Laplace transform of x^(beta-1) E^gamma_{alpha,beta}(-lambda x^alpha) at s."""
    if not r.s > 0:
        raise DomainError(f"Laplace variable s must be positive, got {r.s}")
    return float(r.s ** (p.alpha * p.gamma - p.beta) / (r.lambda_ + r.s ** p.alpha) ** p.gamma)


def ml_laplace_numeric(p: MLParams, lambda_: float, s: float) -> IntegralResult:
    """Quadrature of exp(-s x) x^(beta-1) E^gamma_{alpha,beta}(-lambda x^alpha)."""
    if not s > 0:
        raise DomainError(f"Laplace variable s must be positive, got {s}")

    def one(x: float) -> float:
        if s * x > DECAY_CUTOFF:
            return 0.0
        return np.exp(-s * x) * x ** (p.beta - 1.0) * ml_series(p, -lambda_ * x ** p.alpha)

    return integrate_semi_infinite(np.vectorize(one, otypes=[float]), LAPLACE_CONFIG)

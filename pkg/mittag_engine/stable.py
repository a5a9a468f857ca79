# mittag_engine/stable.py

"""
One-sided stable densities and distribution functions.

f_alpha has Laplace transform exp(-s^alpha). Large arguments use the
convergent tail series in y = x^-alpha; the rest use Zolotarev's integral
over phi in (0, pi), evaluated in log space so that exp(-z A(phi)) underflows
cleanly instead of producing inf * 0.
"""

import logging
from typing import Union

import numpy as np
from scipy.special import gammaln

from mittag_engine.errors import DomainError, MethodDisagreementError
from mittag_engine.params import ScaledStable, StableIndex, TiltParams, as_stable_index
from numerics import (
    QuadratureConfig,
    integrate_finite_batch,
    integrate_semi_infinite,
    integrate_semi_infinite_batch,
    sum_series,
)
from numerics.series import SERIES_CONFIG

logger = logging.getLogger(__name__)

ArrayLike = Union[float, np.ndarray]

# Series for z = x^(-alpha/(1-alpha)) <= Z_CROSSOVER, Zolotarev integral above.
Z_CROSSOVER = 0.25
METHOD_AGREEMENT_TOL = 1e-6

PHI_CONFIG = QuadratureConfig(abs_tol=1e-16, rel_tol=1e-12, max_refinements=10)
CDF_CONFIG = QuadratureConfig(abs_tol=1e-13, rel_tol=1e-12)
CHUNK = 2048

# exp(-z*A) is below double range once z*A exceeds this.
UNDERFLOW_EXPONENT = 800.0
ASYMPTOTIC_LOG_X = np.log(1e250)


def _log_a(alpha: float, phi, dl, dr):
    """log A(phi) with sin(phi) taken from the nearer endpoint distance."""
    sin_phi = np.where(dl < dr, np.sin(dl), np.sin(dr))
    return (
        alpha * np.log(np.sin(alpha * phi))
        + (1.0 - alpha) * np.log(np.sin((1.0 - alpha) * phi))
        - np.log(sin_phi)
    ) / (1.0 - alpha)


def _zolotarev_z(alpha: float, x: np.ndarray) -> np.ndarray:
    with np.errstate(over="ignore", divide="ignore"):
        return np.exp(-alpha / (1.0 - alpha) * np.log(x))


def _density_series(alpha: float, x: np.ndarray) -> np.ndarray:
    if x.size == 0:
        return x.copy()
    log_y = -alpha * np.log(x)

    def term(k: int):
        with np.errstate(under="ignore", over="ignore"):
            magnitude = np.exp(gammaln(alpha * k + 1.0) - gammaln(k + 1.0) + k * log_y)
        return (-1.0) ** (k + 1) * np.sin(np.pi * k * alpha) / np.pi * magnitude

    result = sum_series(term, SERIES_CONFIG, start=1)
    if not result.all_converged:
        logger.debug("stable tail series unconverged at %d points", int(np.sum(~result.converged)))
    return result.values / x


def _density_integral(alpha: float, x: np.ndarray) -> np.ndarray:
    out = np.empty_like(x)
    log_pref0 = np.log(alpha / ((1.0 - alpha) * np.pi))
    for start in range(0, x.size, CHUNK):
        chunk = x[start:start + CHUNK]
        z = _zolotarev_z(alpha, chunk)
        log_pref = log_pref0 - np.log(chunk) / (1.0 - alpha)

        def integrand(phi, dl, dr):
            log_a = _log_a(alpha, phi, dl, dr)[:, None]
            a_val = np.exp(log_a)
            return np.exp(log_pref[None, :] + log_a - z[None, :] * a_val)

        result = integrate_finite_batch(integrand, 0.0, np.pi, PHI_CONFIG, endpoint_distances=True)
        if not result.all_converged:
            logger.debug("Zolotarev integral unconverged at %d points", int(np.sum(~result.converged)))
        out[start:start + CHUNK] = result.values
    return out


def _cdf_zolotarev(alpha: float, x: np.ndarray) -> np.ndarray:
    z = _zolotarev_z(alpha, x)

    def integrand(phi, dl, dr):
        a_val = np.exp(_log_a(alpha, phi, dl, dr))[:, None]
        return np.exp(-z[None, :] * a_val) / np.pi

    return integrate_finite_batch(integrand, 0.0, np.pi, PHI_CONFIG, endpoint_distances=True).values


def density_values(alpha: float, x: np.ndarray, method: str = "auto") -> np.ndarray:
    """Unchecked f_alpha on an array of positive abscissae (any shape)."""
    x = np.asarray(x, dtype=float)
    flat = x.ravel()
    out = np.zeros_like(flat)
    # zero below the support floor and at inf
    live = (flat >= stable_support_floor(alpha)) & np.isfinite(flat)
    if method == "auto":
        use_series = _zolotarev_z(alpha, flat) <= Z_CROSSOVER
    elif method == "series":
        use_series = np.ones(flat.shape, dtype=bool)
    elif method == "integral":
        use_series = np.zeros(flat.shape, dtype=bool)
    else:
        raise DomainError(f"unknown stable density method {method!r}")
    series_points = live & use_series
    integral_points = live & ~use_series
    out[series_points] = _density_series(alpha, flat[series_points])
    out[integral_points] = _density_integral(alpha, flat[integral_points])
    return out.reshape(x.shape)


def log_density_values(alpha: float, log_x: np.ndarray) -> np.ndarray:
    """log f_alpha at exp(log_x), safe for abscissae outside double range.

    Beyond x = 1e250 the leading tail term Gamma(1+alpha) sin(pi alpha)/pi
    x^(-1-alpha) is exact to double precision.
    """
    log_x = np.asarray(log_x, dtype=float)
    flat = log_x.ravel()
    out = np.full(flat.shape, -np.inf)
    asym = flat > ASYMPTOTIC_LOG_X
    out[asym] = gammaln(1.0 + alpha) + np.log(np.sin(np.pi * alpha) / np.pi) - (1.0 + alpha) * flat[asym]
    body = ~asym & (flat >= np.log(stable_support_floor(alpha)))
    with np.errstate(divide="ignore"):
        out[body] = np.log(density_values(alpha, np.exp(flat[body])))
    return out.reshape(log_x.shape)


def _positive_array(x, name: str = "x") -> np.ndarray:
    arr = np.asarray(x, dtype=float)
    if np.any(~(arr > 0)):
        raise DomainError(f"{name} must be positive")
    return arr


def _as_output(arr: np.ndarray, like) -> ArrayLike:
    return float(arr) if np.ndim(like) == 0 else arr


def stable_density(
    a: Union[StableIndex, float],
    x: ArrayLike,
    method: str = "auto",
    verify_methods: bool = False,
) -> ArrayLike:
    """Density of the one-sided stable law with Laplace transform exp(-s^alpha).

    Args:
        a: stable index, 0 < alpha < 1.
        x: positive abscissa(e).
        method: 'auto' (crossover at z = 0.25), 'series' or 'integral'.
        verify_methods: also evaluate the other method and raise
            MethodDisagreementError when they differ by more than 1e-6.
    """
    alpha = as_stable_index(a).alpha
    arr = _positive_array(x)
    values = density_values(alpha, arr, method)
    if verify_methods:
        series = density_values(alpha, arr, "series")
        integral = density_values(alpha, arr, "integral")
        gap = float(np.max(np.abs(series - integral) / np.maximum(1.0, np.abs(values))))
        if gap > METHOD_AGREEMENT_TOL:
            raise MethodDisagreementError(
                f"stable density methods disagree by {gap:.3g} for alpha={alpha}", gap
            )
    return _as_output(values, x)


def cdf_values(alpha: float, x: np.ndarray) -> np.ndarray:
    """Unchecked F_alpha by quadrature of the density (any shape, x >= 0)."""
    x = np.asarray(x, dtype=float)
    flat = x.ravel()
    out = np.zeros_like(flat)

    body = (flat > 0) & (flat <= 1.0)
    if np.any(body):
        xb = flat[body]

        def head(s):
            return density_values(alpha, np.minimum(s[:, None] * xb[None, :], 1e300)) * xb[None, :]

        out[body] = integrate_finite_batch(head, 0.0, 1.0, CDF_CONFIG).values

    tail = flat > 1.0
    if np.any(tail):
        xt = flat[tail]

        def upper(s):
            return density_values(alpha, np.minimum(s[:, None] * xt[None, :], 1e300)) * xt[None, :]

        out[tail] = 1.0 - integrate_semi_infinite_batch(upper, CDF_CONFIG, lower=1.0).values

    return np.clip(out, 0.0, 1.0).reshape(x.shape)


def stable_cdf(a: Union[StableIndex, float], x: ArrayLike, method: str = "density") -> ArrayLike:
    """Distribution function F_alpha(x).

    'density' integrates stable_density (from 0 for x <= 1, as a complement
    of the upper tail beyond); 'zolotarev' uses (1/pi) int exp(-z A(phi)) dphi
    and serves as an independent check. F(0) = 0.
    """
    alpha = as_stable_index(a).alpha
    arr = np.asarray(x, dtype=float)
    if np.any(arr < 0) or np.any(np.isnan(arr)):
        raise DomainError("x must be non-negative")
    if method == "density":
        values = cdf_values(alpha, arr)
    elif method == "zolotarev":
        flat = arr.ravel()
        values = np.zeros_like(flat)
        pos = flat > 0
        values[pos] = _cdf_zolotarev(alpha, flat[pos])
        values = np.clip(values, 0.0, 1.0).reshape(arr.shape)
    else:
        raise DomainError(f"unknown stable cdf method {method!r}")
    return _as_output(values, x)


def stable_density_scaled(s: ScaledStable, x: ArrayLike) -> ArrayLike:
    """f_alpha(x | t) = t^(-1/alpha) f_alpha(x t^(-1/alpha))."""
    arr = _positive_array(x)
    scale = s.t ** (-1.0 / s.alpha.alpha)
    return _as_output(density_values(s.alpha.alpha, arr * scale) * scale, x)


def stable_cdf_scaled(s: ScaledStable, x: ArrayLike) -> ArrayLike:
    arr = np.asarray(x, dtype=float)
    if np.any(arr < 0):
        raise DomainError("x must be non-negative")
    return _as_output(cdf_values(s.alpha.alpha, arr * s.t ** (-1.0 / s.alpha.alpha)), x)


def tilt_constant(p: TiltParams) -> float:
    """Gamma(theta+1) / Gamma(theta/alpha + 1)."""
    return float(np.exp(gammaln(p.theta + 1.0) - gammaln(p.theta / p.alpha.alpha + 1.0)))


def tilted_stable_density(p: TiltParams, x: ArrayLike, t: float) -> ArrayLike:
    """Gamma(theta+1)/Gamma(theta/alpha+1) t^(theta/alpha) x^(-theta) f_alpha(x | t)."""
    arr = _positive_array(x)
    if not t > 0:
        raise DomainError(f"t must be positive, got {t}")
    alpha = p.alpha.alpha
    base = stable_density_scaled(ScaledStable(p.alpha, t), arr)
    values = tilt_constant(p) * t ** (p.theta / alpha) * arr ** (-p.theta) * base
    return _as_output(np.asarray(values), x)


def stable_support_floor(a: Union[StableIndex, float]) -> float:
    """Abscissa below which f_alpha underflows double precision.

    A(phi) increases on (0, pi), so z * A(0+) bounds the exponent from below.
    """
    alpha = as_stable_index(a).alpha
    log_a0 = (alpha * np.log(alpha) + (1.0 - alpha) * np.log(1.0 - alpha)) / (1.0 - alpha)
    z_floor = UNDERFLOW_EXPONENT / np.exp(log_a0)
    return float(z_floor ** (-(1.0 - alpha) / alpha))


def stable_laplace(a: Union[StableIndex, float], s: float, t: float = 1.0) -> float:
    """Numeric Laplace transform of f_alpha(. | t); compare with exp(-t s^alpha)."""
    scaled = ScaledStable(a, t)
    if not s > 0:
        raise DomainError(f"Laplace variable must be positive, got {s}")
    alpha = scaled.alpha.alpha
    scale = t ** (-1.0 / alpha)

    def integrand(x):
        return np.exp(-s * x) * density_values(alpha, np.minimum(x * scale, 1e300)) * scale

    return integrate_semi_infinite(integrand, CDF_CONFIG).value

# mittag_engine/spectral.py

"""
Stieltjes spectral densities from inverting Laplace transforms along s = e^{-i pi} u.

    dR/du = (1/pi) Im{ (e^{-i pi} u)^(alpha gamma - beta) / (lambda + (e^{-i pi} u)^alpha)^gamma }
    dS/du = (1/pi) Im{ (e^{-i pi} u)^(alpha gamma - beta) exp(-t (e^{-i pi} u)^alpha) }

so that x^(beta-1) E^gamma_{alpha,beta}(-lambda x^alpha) = int e^{-xu} dR(u) and
{rho * f_alpha(. | t)}(x) = int e^{-xu} dS(u | t). All powers are principal;
lambda + u^alpha e^{-i pi alpha} stays in the open lower half plane.
"""

import logging
from typing import List, Tuple, Union

import numpy as np
from scipy.special import gammaln

from mittag_engine.errors import DomainError
from mittag_engine.params import MLParams, PollardParams, SpectralPoint, StableIndex, as_stable_index
from numerics import (
    QuadratureConfig,
    integrate_finite_batch,
    integrate_semi_infinite_batch,
    require_converged,
)

logger = logging.getLogger(__name__)

ArrayLike = Union[float, np.ndarray]
Family = Union[PollardParams, MLParams]

SPECTRAL_CONFIG = QuadratureConfig(abs_tol=1e-12, rel_tol=1e-10)
# Split point between the singular piece near u = 0 and the tail.
SPLIT = 1.0


def _check_spectral(params: Family, lambda_: float) -> MLParams:
    """Validate through the Pollard family (0 < alpha < 1, beta > alpha*gamma)."""
    if not lambda_ > 0:
        raise DomainError(f"rate lambda must be positive, got {lambda_}")
    if isinstance(params, PollardParams):
        return params.ml_params()
    PollardParams.from_ml(params)
    return params


def spectral_density_r_values(params: Family, lambda_: float, u: np.ndarray) -> np.ndarray:
    """dR/du on an array of positive u."""
    params = _check_spectral(params, lambda_)
    u = np.asarray(u, dtype=float)
    alpha, beta, gamma = params.alpha, params.beta, params.gamma
    p = alpha * gamma - beta
    with np.errstate(over="ignore", under="ignore", invalid="ignore"):
        numerator = u ** p * np.exp(-1j * np.pi * p)
        denominator = (lambda_ + u ** alpha * np.exp(-1j * np.pi * alpha)) ** gamma
        return np.imag(numerator / denominator) / np.pi


def spectral_density_r(pt: SpectralPoint) -> float:
    return float(spectral_density_r_values(pt.params, pt.lambda_, np.asarray(pt.u)))


def spectral_density_r1(a: Union[StableIndex, float], lambda_: float, u: ArrayLike) -> ArrayLike:
    """Closed form for gamma = beta = 1:
    lambda u^(alpha-1) sin(pi alpha) / (pi (lambda^2 + 2 lambda u^alpha cos(pi alpha) + u^(2 alpha))).
    """
    alpha = as_stable_index(a).alpha
    arr = np.asarray(u, dtype=float)
    if np.any(~(arr > 0)) or not lambda_ > 0:
        raise DomainError("spectral_density_r1 needs u > 0 and lambda > 0")
    with np.errstate(over="ignore", under="ignore"):
        ua = arr ** alpha
        denominator = lambda_ ** 2 + 2.0 * lambda_ * ua * np.cos(np.pi * alpha) + ua * ua
        values = lambda_ * arr ** (alpha - 1.0) * np.sin(np.pi * alpha) / (np.pi * denominator)
    return float(values) if np.ndim(u) == 0 else values


def _log_s_parts(params: MLParams, t: float, u: np.ndarray):
    """log|dS/du| (without 1/pi) and its phase, kept apart so exp(-t u^alpha cos(pi alpha)) never overflows alone."""
    alpha, beta, gamma = params.alpha, params.beta, params.gamma
    p = alpha * gamma - beta
    ua = u ** alpha
    log_magnitude = p * np.log(u) - t * ua * np.cos(np.pi * alpha)
    phase = -np.pi * p + t * ua * np.sin(np.pi * alpha)
    return log_magnitude, phase


def spectral_density_s(params: Family, t: float, u: ArrayLike) -> ArrayLike:
    """dS(u | t)/du for positive u; for alpha > 1/2 the envelope grows like exp(|cos(pi alpha)| t u^alpha)."""
    params = _check_spectral(params, 1.0)
    arr = np.asarray(u, dtype=float)
    if np.any(~(arr > 0)) or not t > 0:
        raise DomainError("spectral_density_s needs u > 0 and t > 0")
    log_magnitude, phase = _log_s_parts(params, t, arr)
    with np.errstate(over="ignore"):
        values = np.exp(log_magnitude) * np.sin(phase) / np.pi
    return float(values) if np.ndim(u) == 0 else values


def _laplace_split(density, x: np.ndarray, what: str) -> np.ndarray:
    """int_0^inf e^{-xu} density(u) du split at u = SPLIT, batched over x > 0."""

    def integrand(u):
        return density(u)[:, None] * np.exp(-u[:, None] * x[None, :])

    near = require_converged(integrate_finite_batch(integrand, 0.0, SPLIT, SPECTRAL_CONFIG), SPECTRAL_CONFIG, what)
    far = require_converged(
        integrate_semi_infinite_batch(integrand, SPECTRAL_CONFIG, lower=SPLIT), SPECTRAL_CONFIG, what
    )
    return near + far


def spectral_laplace_s(params: Family, t: float, x: ArrayLike) -> ArrayLike:
    """int e^{-xu} dS(u | t); reproduces {rho * f_alpha(. | t)}(x)."""
    params = _check_spectral(params, 1.0)
    arr = np.asarray(x, dtype=float)
    if np.any(~(arr > 0)) or not t > 0:
        raise DomainError("spectral_laplace_s needs x > 0 and t > 0")
    if params.beta - params.alpha * params.gamma >= 1.0:
        raise DomainError("dS is not integrable at u = 0 when beta - alpha*gamma >= 1")
    xs = arr.ravel()

    def integrand(u):
        log_magnitude, phase = _log_s_parts(params, t, u)
        log_magnitude = log_magnitude[:, None] - u[:, None] * xs[None, :]
        with np.errstate(over="ignore", under="ignore"):
            return np.exp(log_magnitude) * np.sin(phase)[:, None] / np.pi

    near = integrate_finite_batch(integrand, 0.0, SPLIT, SPECTRAL_CONFIG)
    far = integrate_semi_infinite_batch(integrand, SPECTRAL_CONFIG, lower=SPLIT)
    values = require_converged(near, SPECTRAL_CONFIG, "spectral_laplace_s") + require_converged(
        far, SPECTRAL_CONFIG, "spectral_laplace_s"
    )
    return float(values[0]) if np.ndim(x) == 0 else values.reshape(arr.shape)


def ml_via_spectral(params: Family, lambda_: float, x: ArrayLike) -> ArrayLike:
    """E^gamma_{alpha,beta}(-lambda x^alpha) = x^(1-beta) int e^{-xu} dR(u); 1/Gamma(beta) at x = 0.

    dR/du behaves like u^(alpha gamma - beta) at the origin, so the route needs
    beta - alpha*gamma < 1.
    """
    params = _check_spectral(params, lambda_)
    if params.beta - params.alpha * params.gamma >= 1.0:
        raise DomainError("dR is not integrable at u = 0 when beta - alpha*gamma >= 1")
    arr = np.asarray(x, dtype=float)
    if np.any(arr < 0) or np.any(np.isnan(arr)):
        raise DomainError("ml_via_spectral needs x >= 0")
    flat = arr.ravel()
    out = np.full(flat.shape, float(np.exp(-gammaln(params.beta))))
    live = flat > 0
    if np.any(live):
        xs = flat[live]
        integral = _laplace_split(lambda u: spectral_density_r_values(params, lambda_, u), xs, "ml_via_spectral")
        out[live] = xs ** (1.0 - params.beta) * integral
    return float(out[0]) if np.ndim(x) == 0 else out.reshape(arr.shape)


def spectral_mass(a: Union[StableIndex, float], lambda_: float) -> float:
    """int dR_alpha for gamma = beta = 1; equals E_alpha(0) = 1."""
    alpha = as_stable_index(a).alpha
    result = integrate_semi_infinite_batch(lambda u: spectral_density_r1(alpha, lambda_, u), SPECTRAL_CONFIG)
    return float(require_converged(result, SPECTRAL_CONFIG, "spectral_mass"))


def spectral_sign_scan(
    params: Family, lambda_: float, u_grid: np.ndarray, tol: float = 1e-9
) -> Tuple[float, List[Tuple[float, float]]]:
    """Minimum of dR/du over the grid and the (u, value) pairs below -tol.

    For beta > 1 the density carries a negative tail ~ sin(pi beta) u^(-beta) / pi.
    """
    grid = np.asarray(u_grid, dtype=float)
    if np.any(~(grid > 0)):
        raise DomainError("spectral grid must be positive")
    values = spectral_density_r_values(params, lambda_, grid)
    negative = [(float(u), float(v)) for u, v in zip(grid, values) if v < -tol]
    return float(np.min(values)), negative

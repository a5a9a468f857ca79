# mittag_engine/pollard.py

"""
Pollard-type representations of the Mittag-Leffler functions.

The generalised Pollard law dP^gamma_{alpha,beta} is built from the one-sided
stable density convolved with the power kernel

    rho(x) = x^(c-1) / Gamma(c),   c = beta - alpha*gamma > 0,

and E^gamma_{alpha,beta}(-lambda x^alpha) is its Laplace transform evaluated
at lambda x^alpha. Gamma mixtures of the kernel w(x|t) give marginal
densities whose rescaled small-shape limit recovers Gamma(gamma) x^(beta-1) E.
Every function accepts scalar or array arguments and evaluates the inner
integrals for the whole batch at once.
"""

import logging
from typing import Union

import numpy as np
from scipy.special import gammaln

from mittag_engine.errors import DomainError, MethodDisagreementError, SeriesCancellationError
from mittag_engine.mittag_leffler import DECAY_CUTOFF, ml_series
from mittag_engine.params import GammaPrior, MLParams, PollardParams, StableIndex, TiltParams, as_stable_index
from mittag_engine.stable import (
    ASYMPTOTIC_LOG_X,
    cdf_values,
    density_values,
    log_density_values,
    stable_support_floor,
    tilt_constant,
)
from numerics import (
    BatchIntegralResult,
    QuadratureConfig,
    integrate_finite_batch,
    integrate_semi_infinite_batch,
    require_converged,
)

logger = logging.getLogger(__name__)

ArrayLike = Union[float, np.ndarray]

CONV_CONFIG = QuadratureConfig(abs_tol=1e-16, rel_tol=1e-11, max_refinements=9)
OUTER_CONFIG = QuadratureConfig(abs_tol=1e-10, rel_tol=1e-9)
KERNEL_AGREEMENT_TOL = 1e-8


def _check(result: BatchIntegralResult, what: str) -> np.ndarray:
    return require_converged(result, OUTER_CONFIG, what)


def _as_output(values: np.ndarray, like) -> ArrayLike:
    return float(values) if np.ndim(like) == 0 else values


def rho_density(p: PollardParams, x: ArrayLike) -> ArrayLike:
    """Power kernel x^(beta-alpha*gamma-1) / Gamma(beta-alpha*gamma)."""
    arr = np.asarray(x, dtype=float)
    if np.any(~(arr > 0)):
        raise DomainError("rho_density needs x > 0")
    c = p.kernel_exponent
    return _as_output(np.exp((c - 1.0) * np.log(arr) - gammaln(c)), x)


def _kernel_integral(alpha: float, c: float, y: np.ndarray, scale: float = 1.0) -> np.ndarray:
    """(1/Gamma(c)) int_0^y (y-u)^(c-1) scale*f_alpha(scale*u) du for positive y.

    (0, y/2) is integrated in log u from the support floor of f_alpha, which
    keeps the bulk of f resolved when y is large; (y/2, y) carries the kernel
    singularity and uses accurate endpoint distances.
    """
    out = np.zeros_like(y)
    if y.size == 0:
        return out
    floor = stable_support_floor(alpha) / scale
    # f_alpha vanishes on (0, y) when y is below the support floor
    live = y > floor
    if not live.all():
        out[live] = _kernel_integral(alpha, c, y[live], scale)
        return out
    half = 0.5 * y
    v0 = np.log(floor)
    span = np.maximum(np.log(np.maximum(half, floor)) - v0, 0.0)

    def head(s):
        u = np.exp(v0 + s[:, None] * span[None, :])
        return (y[None, :] - u) ** (c - 1.0) * density_values(alpha, scale * u) * scale * u * span[None, :]

    def tail(s, dl, dr):
        u = half[None, :] * (1.0 + s[:, None])
        gap = half[None, :] * dr[:, None]
        return gap ** (c - 1.0) * density_values(alpha, scale * u) * scale * half[None, :]

    head_part = integrate_finite_batch(head, 0.0, 1.0, CONV_CONFIG)
    tail_part = integrate_finite_batch(tail, 0.0, 1.0, CONV_CONFIG, endpoint_distances=True)
    if not (head_part.all_converged and tail_part.all_converged):
        logger.debug("stable convolution: inner quadrature unconverged")
    return (head_part.values + tail_part.values) * np.exp(-gammaln(c))


def log_convolution_values(alpha: float, c: float, log_y: np.ndarray) -> np.ndarray:
    """log {rho * f_alpha}(exp(log_y)); the far tail uses the exact leading asymptote."""
    log_y = np.asarray(log_y, dtype=float)
    flat = log_y.ravel()
    out = np.full(flat.shape, -np.inf)
    asym = flat > ASYMPTOTIC_LOG_X
    out[asym] = (c - 1.0) * flat[asym] - gammaln(c)
    # f_alpha vanishes on (0, y) below the support floor
    body = ~asym & (flat > np.log(stable_support_floor(alpha)))
    with np.errstate(divide="ignore"):
        out[body] = np.log(_kernel_integral(alpha, c, np.exp(flat[body])))
    return out.reshape(log_y.shape)


def convolution_values(alpha: float, c: float, y: np.ndarray) -> np.ndarray:
    """Unchecked {rho * f_alpha}(y) on positive y of any shape."""
    y = np.asarray(y, dtype=float)
    with np.errstate(divide="ignore"):
        return np.exp(log_convolution_values(alpha, c, np.log(y)))


def stable_convolution(p: PollardParams, y: ArrayLike) -> ArrayLike:
    """{rho * f_alpha}(y): stable density convolved with the power kernel."""
    arr = np.asarray(y, dtype=float)
    if np.any(~(arr > 0)):
        raise DomainError("convolution argument must be positive")
    return _as_output(convolution_values(p.alpha.alpha, p.kernel_exponent, arr), y)


def conv_kernel_w(p: PollardParams, x: ArrayLike, t: float, check: bool = True) -> ArrayLike:
    """Mixing kernel w(x | t) = t^gamma {rho * f_alpha(. | t)}(x).

    The direct convolution against the scaled density is compared with the
    rescaled form t^((beta-1)/alpha) {rho * f_alpha}(x t^(-1/alpha)).
    """
    arr = np.asarray(x, dtype=float)
    if np.any(~(arr > 0)) or not t > 0:
        raise DomainError("conv_kernel_w needs x > 0 and t > 0")
    alpha = p.alpha.alpha
    c = p.kernel_exponent
    scale = t ** (-1.0 / alpha)
    rescaled = t ** ((p.beta - 1.0) / alpha) * convolution_values(alpha, c, arr * scale)
    if check:
        direct = t ** p.gamma * _kernel_integral(alpha, c, arr.ravel(), scale).reshape(arr.shape)
        gap = float(np.max(np.abs(direct - rescaled) / np.maximum(1.0, np.abs(rescaled))))
        if gap > KERNEL_AGREEMENT_TOL:
            raise MethodDisagreementError(f"kernel routes for w(x|t) differ by {gap:.3g}", gap)
    return _as_output(rescaled, x)


def pollard_density_values(p: PollardParams, u: np.ndarray) -> np.ndarray:
    """Unchecked density of dP^gamma_{alpha,beta} at positive u."""
    alpha = p.alpha.alpha
    u = np.asarray(u, dtype=float)
    log_u = np.log(u)
    log_conv = log_convolution_values(alpha, p.kernel_exponent, -log_u / alpha)
    power = ((p.beta - 1.0) / alpha - 1.0) * log_u - gammaln(p.gamma)
    with np.errstate(over="ignore", under="ignore"):
        return np.exp(log_conv + power)


def pollard_density(p: PollardParams, u: ArrayLike) -> ArrayLike:
    """{rho * f_alpha}(u^(-1/alpha)) u^((beta-1)/alpha - 1) / Gamma(gamma)."""
    arr = np.asarray(u, dtype=float)
    if np.any(~(arr > 0)):
        raise DomainError("Pollard density needs u > 0")
    return _as_output(pollard_density_values(p, arr), u)


def _cumulative(density, t: ArrayLike, what: str) -> ArrayLike:
    """int_0^t density(u) du for every t, as cumulative sums over sorted pieces."""
    arr = np.asarray(t, dtype=float)
    if np.any(arr < 0) or np.any(np.isnan(arr)):
        raise DomainError(f"{what} needs t >= 0")
    flat = arr.ravel()
    order = np.argsort(flat)
    sorted_t = flat[order]
    finite = np.isfinite(sorted_t)
    ends = sorted_t[finite]
    starts = np.concatenate(([0.0], ends[:-1]))
    widths = ends - starts

    pieces = np.zeros_like(ends)
    live = widths > 0
    if np.any(live):
        lo = starts[live]
        wd = widths[live]

        def integrand(s):
            u = lo[None, :] + s[:, None] * wd[None, :]
            return density(np.maximum(u, 1e-300)) * wd[None, :]

        pieces[live] = _check(integrate_finite_batch(integrand, 0.0, 1.0, OUTER_CONFIG), what)

    totals = np.empty_like(sorted_t)
    totals[finite] = np.cumsum(pieces)
    if not np.all(finite):
        mass = _check(integrate_semi_infinite_batch(density, OUTER_CONFIG), what)
        totals[~finite] = mass
    out = np.empty_like(flat)
    out[order] = totals
    return _as_output(out.reshape(arr.shape), t)


def pollard_cdf(p: PollardParams, t: ArrayLike) -> ArrayLike:
    """P^gamma_{alpha,beta}(t); t = inf gives the total mass."""
    return _cumulative(lambda u: pollard_density_values(p, u), t, "pollard_cdf")


def pollard_total_mass(p: PollardParams) -> float:
    """Total mass of dP^gamma_{alpha,beta}; equals E^gamma_{alpha,beta}(0) = 1/Gamma(beta)."""
    result = integrate_semi_infinite_batch(lambda u: pollard_density_values(p, u), OUTER_CONFIG)
    return float(_check(result, "pollard_total_mass"))


def ml_via_pollard(p: PollardParams, lambda_: float, x: ArrayLike) -> ArrayLike:
    """E^gamma_{alpha,beta}(-lambda x^alpha) as the Laplace transform of dP at lambda x^alpha."""
    arr = np.asarray(x, dtype=float)
    if np.any(arr < 0) or not lambda_ > 0:
        raise DomainError("ml_via_pollard needs x >= 0 and lambda > 0")
    rate = lambda_ * arr.ravel() ** p.alpha.alpha

    def integrand(u):
        return pollard_density_values(p, u)[:, None] * np.exp(-u[:, None] * rate[None, :])

    values = _check(integrate_semi_infinite_batch(integrand, OUTER_CONFIG), "ml_via_pollard")
    return _as_output(values.reshape(arr.shape), x)


def _positive(x: ArrayLike, what: str) -> np.ndarray:
    arr = np.asarray(x, dtype=float)
    if np.any(~(arr > 0)):
        raise DomainError(f"{what} needs x > 0")
    return arr


def marginal_density(p: PollardParams, prior: GammaPrior, x: ArrayLike) -> ArrayLike:
    """m^gamma(x | mu, lambda) = lambda^mu/Gamma(mu) int w(x|t) t^(mu-1) e^(-lambda t) dt.

    The exp-sinh map in t is double exponential in log t, so the t^(mu-1)
    endpoint behaviour for small mu is handled by the transform itself.
    """
    arr = _positive(x, "marginal_density")
    alpha = p.alpha.alpha
    c = p.kernel_exponent
    xs = arr.ravel()
    log_coef = prior.mu * np.log(prior.lambda_) - gammaln(prior.mu)

    log_x = np.log(xs)[None, :]

    def integrand(t):
        log_t = np.log(t)[:, None]
        log_conv = log_convolution_values(alpha, c, log_x - log_t / alpha)
        with np.errstate(over="ignore", under="ignore"):
            return np.exp(
                log_coef + log_conv + ((p.beta - 1.0) / alpha + prior.mu - 1.0) * log_t - prior.lambda_ * t[:, None]
            )

    values = _check(integrate_semi_infinite_batch(integrand, OUTER_CONFIG), "marginal_density")
    return _as_output(values.reshape(arr.shape), x)


def marginal_density_closed(p: PollardParams, prior: GammaPrior, x: float) -> float:
    """Inverse of the closed-form marginal Laplace transform:
    lambda^mu Gamma(gamma+mu)/Gamma(mu) x^(beta+alpha mu-1) E^{gamma+mu}_{alpha,beta+alpha mu}(-lambda x^alpha).
    """
    if not x > 0:
        raise DomainError("marginal_density_closed needs x > 0")
    alpha, mu, lam = p.alpha.alpha, prior.mu, prior.lambda_
    shifted = MLParams(alpha, p.beta + alpha * mu, p.gamma + mu)
    log_coef = mu * np.log(lam) + gammaln(p.gamma + mu) - gammaln(mu) + (p.beta + alpha * mu - 1.0) * np.log(x)
    return float(np.exp(log_coef) * ml_series(shifted, -lam * x ** alpha))


def ml_via_limit(p: PollardParams, lambda_: float, x: ArrayLike, n: int, mu: float) -> ArrayLike:
    """(n/mu) m^gamma(x | mu/n, lambda); tends to Gamma(gamma) x^(beta-1) E(-lambda x^alpha) as n grows."""
    if n < 1 or not mu > 0:
        raise DomainError("ml_via_limit needs n >= 1 and mu > 0")
    values = marginal_density(p, GammaPrior(mu / n, lambda_), x)
    return values * (n / mu)


def ml_via_limit_sequence(p: PollardParams, lambda_: float, x: float, n_list, mu: float) -> np.ndarray:
    """ml_via_limit for every n of `n_list` at one x, sharing the kernel evaluations."""
    n = np.asarray(n_list, dtype=float)
    if not x > 0 or not mu > 0 or np.any(n < 1):
        raise DomainError("ml_via_limit_sequence needs x > 0, mu > 0 and n >= 1")
    alpha = p.alpha.alpha
    c = p.kernel_exponent
    eps = mu / n
    # (n/mu) lambda^eps / Gamma(eps) = lambda^eps / Gamma(eps + 1)
    log_coef = eps * np.log(lambda_) - gammaln(eps + 1.0)
    log_x = np.log(x)

    def integrand(t):
        log_t = np.log(t)
        base = log_convolution_values(alpha, c, log_x - log_t / alpha)
        base = base + ((p.beta - 1.0) / alpha - 1.0) * log_t - lambda_ * t
        with np.errstate(over="ignore", under="ignore"):
            return np.exp(base[:, None] + log_coef[None, :] + eps[None, :] * log_t[:, None])

    return _check(integrate_semi_infinite_batch(integrand, OUTER_CONFIG), "ml_via_limit_sequence")


def limit_target(p: PollardParams, lambda_: float, x: float) -> float:
    """Gamma(gamma) x^(beta-1) E^gamma_{alpha,beta}(-lambda x^alpha) from the series."""
    alpha = p.alpha.alpha
    return float(
        np.exp(gammaln(p.gamma) + (p.beta - 1.0) * np.log(x))
        * ml_series(p.ml_params(), -lambda_ * x ** alpha)
    )


def _scaled_stable_mixture(alpha: float, x: np.ndarray, prior: GammaPrior, log_kernel) -> np.ndarray:
    """int exp(log_kernel(log y, log t)) dGamma(mu, lambda)(t) with y = x t^(-1/alpha), batched over x."""
    log_coef = prior.mu * np.log(prior.lambda_) - gammaln(prior.mu)
    log_x = np.log(x)[None, :]

    def integrand(t):
        log_t = np.log(t)[:, None]
        log_weight = log_coef + (prior.mu - 1.0) * log_t - prior.lambda_ * t[:, None]
        with np.errstate(over="ignore", under="ignore"):
            return np.exp(log_kernel(log_x - log_t / alpha, log_t) + log_weight)

    return integrate_semi_infinite_batch(integrand, OUTER_CONFIG)


def stable_marginal_density(a: Union[StableIndex, float], prior: GammaPrior, x: ArrayLike) -> ArrayLike:
    """m_alpha(x | mu, lambda) = int f_alpha(x | t) dGamma(mu, lambda)(t)."""
    alpha = as_stable_index(a).alpha
    arr = _positive(x, "stable_marginal_density")

    def log_kernel(log_y, log_t):
        return log_density_values(alpha, log_y) - log_t / alpha

    values = _check(_scaled_stable_mixture(alpha, arr.ravel(), prior, log_kernel), "stable_marginal_density")
    return _as_output(values.reshape(arr.shape), x)


def stable_marginal_cdf(a: Union[StableIndex, float], prior: GammaPrior, x: ArrayLike) -> ArrayLike:
    """M_alpha(x | mu, lambda) = int F_alpha(x | t) dGamma(mu, lambda)(t)."""
    alpha = as_stable_index(a).alpha
    arr = _positive(x, "stable_marginal_cdf")

    def log_kernel(log_y, log_t):
        y = np.exp(np.minimum(log_y, np.log(1e300)))
        with np.errstate(divide="ignore"):
            return np.log(cdf_values(alpha, y))

    values = _check(_scaled_stable_mixture(alpha, arr.ravel(), prior, log_kernel), "stable_marginal_cdf")
    return _as_output(values.reshape(arr.shape), x)


def feller_mixture(a: Union[StableIndex, float], lambda_: float, x: ArrayLike) -> ArrayLike:
    """lambda int F_alpha(x | t) e^(-lambda t) dt, which equals 1 - E_alpha(-lambda x^alpha)."""
    return stable_marginal_cdf(a, GammaPrior(1.0, lambda_), x)


def feller_bivariate_laplace(a: Union[StableIndex, float], s: float, t: float) -> float:
    """int e^(-s x) (1 - F_alpha(x | t)) dx; the closed form is (1 - e^(-t s^alpha)) / s."""
    alpha = as_stable_index(a).alpha
    if not (s > 0 and t > 0):
        raise DomainError("feller_bivariate_laplace needs s > 0 and t > 0")
    scale = t ** (-1.0 / alpha)

    def integrand(x):
        live = s * x <= DECAY_CUTOFF
        out = np.zeros_like(x)
        out[live] = np.exp(-s * x[live]) * (1.0 - cdf_values(alpha, x[live] * scale))
        return out

    return float(_check(integrate_semi_infinite_batch(integrand, OUTER_CONFIG), "feller_bivariate_laplace"))


def tilted_pollard_density_values(tp: TiltParams, u: np.ndarray) -> np.ndarray:
    """Gamma(theta+1)/Gamma(theta/alpha+1) u^(theta/alpha) (1/alpha) f_alpha(u^(-1/alpha)) u^(-1/alpha-1)."""
    alpha = tp.alpha.alpha
    u = np.asarray(u, dtype=float)
    log_u = np.log(u)
    log_f = log_density_values(alpha, -log_u / alpha)
    log_coef = np.log(tilt_constant(tp) / alpha)
    with np.errstate(over="ignore", under="ignore"):
        return np.exp(log_coef + log_f + ((tp.theta - 1.0) / alpha - 1.0) * log_u)


def tilted_pollard_density(tp: TiltParams, u: ArrayLike) -> ArrayLike:
    arr = np.asarray(u, dtype=float)
    if np.any(~(arr > 0)):
        raise DomainError("tilted Pollard density needs u > 0")
    return _as_output(tilted_pollard_density_values(tp, arr), u)


def tilted_pollard_cdf(tp: TiltParams, t: ArrayLike) -> ArrayLike:
    """P_{alpha,theta}(t); a probability law, so t = inf gives 1."""
    return _cumulative(lambda u: tilted_pollard_density_values(tp, u), t, "tilted_pollard_cdf")


def tilted_h(tp: TiltParams, lambda_: float, x: ArrayLike, method: str = "pollard") -> ArrayLike:
    """Laplace transform of the tilted Pollard law at lambda x^alpha.

    'pollard' integrates exp(-lambda x^alpha u) dP_{alpha,theta}(u);
    'mixture' uses alpha h = x int f_{alpha,theta}(x | t) t^(-1) e^(-lambda t) dt.
    """
    arr = np.asarray(x, dtype=float)
    if np.any(arr < 0) or not lambda_ > 0:
        raise DomainError("tilted_h needs x >= 0 and lambda > 0")
    alpha = tp.alpha.alpha
    flat = arr.ravel()

    if method == "pollard":
        rate = lambda_ * flat ** alpha

        def integrand(u):
            return tilted_pollard_density_values(tp, u)[:, None] * np.exp(-u[:, None] * rate[None, :])

        values = _check(integrate_semi_infinite_batch(integrand, OUTER_CONFIG), "tilted_h")
        return _as_output(values.reshape(arr.shape), x)

    if method != "mixture":
        raise DomainError(f"unknown tilted_h method {method!r}")

    values = np.ones_like(flat)
    live = flat > 0
    if np.any(live):
        log_x = np.log(flat[live])[None, :]
        log_coef = np.log(tilt_constant(tp) / alpha)

        def integrand(t):
            log_t = np.log(t)[:, None]
            log_f = log_density_values(alpha, log_x - log_t / alpha)
            exponent = (
                log_coef
                + (tp.theta / alpha - 1.0 / alpha - 1.0) * log_t
                - lambda_ * t[:, None]
                + (1.0 - tp.theta) * log_x
                + log_f
            )
            with np.errstate(over="ignore", under="ignore"):
                return np.exp(exponent)

        values[live] = _check(integrate_semi_infinite_batch(integrand, OUTER_CONFIG), "tilted_h")
    return _as_output(values.reshape(arr.shape), x)


def evaluate_ml(p: MLParams, x: float) -> float:
    """Designated evaluator: the series where it is reliable, the Pollard route when it refuses."""
    try:
        return ml_series(p, x)
    except SeriesCancellationError:
        if x >= 0 or p.regime != "complete_monotone":
            raise
        logger.info("series refused at x=%g; switching to the Pollard route", x)
        return float(ml_via_pollard(PollardParams.from_ml(p), -x, 1.0))

# verification/suites.py

"""
Named verification suites run by `main_app.py verify`.

Each suite builds its grids, runs the harness checks and returns a
SuiteResult. A `tol` passed by the caller replaces the default tolerance of
every check in the suite; `perturb` adds perturb * x to the series route of
the `routes` suite so that the harness can be shown to catch injected error.
"""

import logging
from typing import Callable, Dict, List, Optional

import numpy as np
from scipy.special import erf, gamma as gamma_fn

from mittag_engine import (
    GammaPrior,
    MLParams,
    PollardParams,
    RatePair,
    ScaledStable,
    StableIndex,
    TiltParams,
    conv_kernel_w,
    evaluate_ml,
    feller_bivariate_laplace,
    feller_mixture,
    marginal_density,
    marginal_density_closed,
    ml_laplace_closed,
    ml_laplace_numeric,
    ml_series,
    ml_via_pollard,
    ml_via_spectral,
    pollard_cdf,
    pollard_total_mass,
    spectral_laplace_s,
    spectral_mass,
    stable_cdf,
    stable_density_scaled,
    stable_laplace,
    tilted_h,
)
from mittag_engine.errors import DomainError
from numerics import QuadratureConfig, integrate_finite
from verification.harness import (
    bernstein_composition_check,
    check_complete_monotonicity,
    check_laplace_identity,
    compare_values,
    cross_validate,
    limit_convergence_report,
    radon_nikodym_report,
    spectral_sign_report,
)
from verification.reports import SuiteResult

logger = logging.getLogger(__name__)

CM_PARAMS = [(0.5, 1.0, 1.0), (0.5, 1.2, 1.5), (0.7, 1.5, 1.8)]
THREE_PARAM = [(0.5, 1.2, 1.5), (0.7, 1.5, 1.8)]
STABLE_ALPHAS = [0.3, 0.5, 0.7]
CM_GRID = 0.1 + 0.125 * np.arange(81)
DIRECT_CONFIG = QuadratureConfig(abs_tol=1e-14, rel_tol=1e-12)


def _tol(override: Optional[float], default: float) -> float:
    return default if override is None else override


def _series_route(params: MLParams, lambda_: float, perturb: float = 0.0) -> Callable[[np.ndarray], np.ndarray]:
    """x -> E(-lambda x^alpha) from the series, optionally shifted by perturb * x."""
    def route(xs: np.ndarray) -> np.ndarray:
        return np.array([ml_series(params, -lambda_ * x ** params.alpha) + perturb * x for x in xs])
    return route


def _cm_suite(tol: Optional[float], **_) -> SuiteResult:
    cm_tol = _tol(tol, 1e-7)
    certificates = []
    for alpha, beta, gamma in CM_PARAMS:
        params = MLParams(alpha, beta, gamma)
        certificates.append(check_complete_monotonicity(
            lambda x, _p=params: evaluate_ml(_p, -x),
            CM_GRID,
            k_max=8,
            tol=cm_tol,
            label=f"E({alpha},{beta},{gamma})(-x)",
        ))
    for params, lambda_ in ((MLParams(0.5, 1.0, 1.0), 1.0), (MLParams(0.5, 1.2, 1.5), 2.0)):
        for a2 in (0.5, 0.7):
            certificates.append(bernstein_composition_check(params, lambda_, a2, CM_GRID, k_max=8, tol=cm_tol))
    return SuiteResult(suite="cm", certificates=certificates)


def _routes_suite(tol: Optional[float], perturb: float = 0.0, workers: int = 1, **_) -> SuiteResult:
    reports = []
    one_grid = 0.5 * np.arange(11)
    for alpha in STABLE_ALPHAS:
        params = MLParams(alpha, 1.0, 1.0)
        reports.append(cross_validate(
            {
                "series": _series_route(params, 1.0, perturb),
                "pollard": lambda xs, _p=PollardParams.from_ml(params): ml_via_pollard(_p, 1.0, xs),
            },
            one_grid,
            _tol(tol, 1e-6),
            reference="series",
            suite_name=f"routes({alpha},1,1)",
            workers=workers,
        ))
    three_grid = 0.25 * np.arange(13)
    for alpha, beta, gamma in THREE_PARAM:
        params = MLParams(alpha, beta, gamma)
        reports.append(cross_validate(
            {
                "series": _series_route(params, 1.0, perturb),
                "pollard": lambda xs, _p=PollardParams.from_ml(params): ml_via_pollard(_p, 1.0, xs),
                "spectral": lambda xs, _p=params: ml_via_spectral(_p, 1.0, xs),
            },
            three_grid,
            _tol(tol, 1e-5),
            reference="series",
            suite_name=f"routes({alpha},{beta},{gamma})",
            workers=workers,
        ))
    return SuiteResult(suite="routes", reports=reports)


def _laplace_suite(tol: Optional[float], **_) -> SuiteResult:
    reports = []
    s_grid = [0.5, 1.0, 2.0]
    inputs, computed, expected = [], [], []
    for alpha in STABLE_ALPHAS:
        for t in (1.0, 0.5, 2.0):
            for s in s_grid:
                inputs.append({"alpha": alpha, "t": t, "s": s})
                computed.append(stable_laplace(alpha, s, t))
                expected.append(np.exp(-t * s ** alpha))
    reports.append(compare_values(
        "stable_laplace", inputs, computed, expected, _tol(tol, 1e-6), reference="exp(-t s^alpha)"
    ))

    reports.append(check_laplace_identity(
        lambda x: np.exp(-x), lambda s: 1.0 / (1.0 + s), [0.5, 1.0, 2.0, 4.0],
        _tol(tol, 1e-10), suite_name="laplace(exp)", vectorized=True,
    ))

    for params, lambda_, s_values, default in (
        (MLParams(0.5, 1.0, 1.0), 1.0, [1.0, 2.0, 4.0], 1e-6),
        (MLParams(0.5, 1.2, 1.5), 1.0, [1.0, 2.0, 4.0], 1e-5),
    ):
        inputs = [{"s": s} for s in s_values]
        computed = [ml_laplace_numeric(params, lambda_, s).value for s in s_values]
        expected = [ml_laplace_closed(params, RatePair(lambda_, s)) for s in s_values]
        reports.append(compare_values(
            f"ml_laplace({params.alpha},{params.beta},{params.gamma})",
            inputs, computed, expected, _tol(tol, default), reference="closed_form", route_name="numeric",
        ))

    for alpha, beta, gamma in [(0.5, 1.0, 1.0)] + THREE_PARAM:
        p = PollardParams(alpha, beta, gamma)
        t = 1.5
        reports.append(check_laplace_identity(
            lambda x, _p=p: conv_kernel_w(_p, x, t, check=False) / t ** _p.gamma,
            lambda s, _p=p: s ** (-_p.kernel_exponent) * np.exp(-t * s ** alpha),
            s_grid,
            _tol(tol, 1e-6),
            suite_name=f"laplace(rho*f)({alpha},{beta},{gamma})",
            vectorized=True,
        ))
    return SuiteResult(suite="laplace", reports=reports)


def _duality_suite(tol: Optional[float], **_) -> SuiteResult:
    reports = []
    t_grid = np.array([0.25, 0.5, 1.0, 2.0, 4.0])
    half = PollardParams(0.5, 1.0, 1.0)
    reports.append(compare_values(
        "duality(1/2)",
        [{"t": t} for t in t_grid],
        pollard_cdf(half, t_grid),
        erf(t_grid / 2.0),
        _tol(tol, 1e-8),
        reference="erf(t/2)",
        route_name="pollard_cdf",
    ))
    for alpha in (0.3, 0.7):
        p = PollardParams(alpha, 1.0, 1.0)
        reports.append(compare_values(
            f"duality({alpha})",
            [{"t": t} for t in t_grid],
            pollard_cdf(p, t_grid),
            1.0 - stable_cdf(alpha, t_grid ** (-1.0 / alpha)),
            _tol(tol, 1e-7),
            reference="1 - F(t^(-1/alpha))",
            route_name="pollard_cdf",
        ))
    masses = [(alpha, beta, gamma) for alpha, beta, gamma in [(0.5, 1.0, 1.0)] + THREE_PARAM]
    reports.append(compare_values(
        "pollard_total_mass",
        [{"alpha": a, "beta": b, "gamma": g} for a, b, g in masses],
        [pollard_total_mass(PollardParams(a, b, g)) for a, b, g in masses],
        [1.0 / gamma_fn(b) for _, b, _ in masses],
        _tol(tol, 1e-7),
        reference="1/Gamma(beta)",
        route_name="total_mass",
    ))
    return SuiteResult(suite="duality", reports=reports)


def _feller_suite(tol: Optional[float], **_) -> SuiteResult:
    reports = []
    x_grid = 0.5 * np.arange(1, 11)
    for alpha in STABLE_ALPHAS:
        for lambda_ in (0.5, 2.0):
            reports.append(compare_values(
                f"feller({alpha},lambda={lambda_})",
                [{"x": x} for x in x_grid],
                feller_mixture(alpha, lambda_, x_grid),
                [1.0 - ml_series(MLParams(alpha, 1.0, 1.0), -lambda_ * x ** alpha) for x in x_grid],
                _tol(tol, 1e-6),
                reference="1 - E_alpha(-lambda x^alpha)",
                route_name="feller_mixture",
            ))
    cases = [(alpha, s, t) for alpha in STABLE_ALPHAS for s in (0.5, 2.0) for t in (0.5, 2.0)]
    reports.append(compare_values(
        "feller_bivariate_laplace",
        [{"alpha": a, "s": s, "t": t} for a, s, t in cases],
        [feller_bivariate_laplace(a, s, t) for a, s, t in cases],
        [(1.0 - np.exp(-t * s ** a)) / s for a, s, t in cases],
        _tol(tol, 1e-6),
        reference="(1 - exp(-t s^alpha))/s",
        route_name="numeric",
    ))
    return SuiteResult(suite="feller", reports=reports)


def _limit_suite(tol: Optional[float], **_) -> SuiteResult:
    limit_reports = []
    n_list = [2 ** k for k in range(7)]
    for alpha, beta, gamma in [(0.5, 1.0, 1.0), (0.5, 1.2, 1.5)]:
        limit_reports.append(limit_convergence_report(
            PollardParams(alpha, beta, gamma), 1.0, 1.0, [0.5, 1.0, 2.0], n_list,
            error_tol=_tol(tol, 1e-3), agreement_tol=_tol(tol, 1e-4),
        ))

    # both sides of the marginal diagram: mixture quadrature against the closed form
    x_grid = np.array([0.5, 1.0, 2.0])
    reports = []
    for alpha, beta, gamma in [(0.5, 1.0, 1.0)] + THREE_PARAM:
        p = PollardParams(alpha, beta, gamma)
        prior = GammaPrior(1.5, 1.0)
        reports.append(compare_values(
            f"marginal_diagram({alpha},{beta},{gamma})",
            [{"x": x} for x in x_grid],
            marginal_density(p, prior, x_grid),
            [marginal_density_closed(p, prior, x) for x in x_grid],
            _tol(tol, 1e-6),
            reference="closed_form",
            route_name="mixture",
        ))
    # Laplace transform of the marginal: lambda^mu Gamma(gamma+mu)/Gamma(mu) s^(alpha gamma-beta) (lambda+s^alpha)^-(gamma+mu)
    p, prior = PollardParams(0.5, 1.0, 1.0), GammaPrior(2.0, 1.0)
    reports.append(check_laplace_identity(
        lambda xs: marginal_density(p, prior, xs),
        lambda s: prior.lambda_ ** prior.mu * gamma_fn(p.gamma + prior.mu) / gamma_fn(prior.mu)
        * s ** (p.alpha.alpha * p.gamma - p.beta) * (prior.lambda_ + s ** p.alpha.alpha) ** -(p.gamma + prior.mu),
        [1.0],
        _tol(tol, 1e-6),
        suite_name="marginal_laplace(0.5,1.0,1.0)",
        vectorized=True,
    ))
    return SuiteResult(suite="limit", reports=reports, limit_reports=limit_reports)


def _direct_kernel(p: PollardParams, x: float, t: float) -> float:
    """t^gamma int_0^x rho(x - u) f_alpha(u | t) du through the public density."""
    c = p.kernel_exponent
    scaled = ScaledStable(p.alpha, t)

    def integrand(u, dl, dr):
        return dr ** (c - 1.0) * stable_density_scaled(scaled, np.maximum(u, 1e-300))

    value = integrate_finite(integrand, 0.0, x, DIRECT_CONFIG, endpoint_distances=True).value
    return t ** p.gamma * value / gamma_fn(c)


def _scaling_suite(tol: Optional[float], **_) -> SuiteResult:
    grid = [(a, t, x) for a in STABLE_ALPHAS for t in (0.5, 1.0, 2.0) for x in (0.5, 1.0, 2.0)]
    one_param = compare_values(
        "stable_kernel_identity",
        [{"alpha": a, "t": t, "x": x} for a, t, x in grid],
        [x * stable_density_scaled(ScaledStable(a, t), x) for a, t, x in grid],
        [a * conv_kernel_w(PollardParams(a, 1.0, 1.0), x, t, check=False) for a, t, x in grid],
        _tol(tol, 1e-7),
        reference="alpha t {rho * f(.|t)}(x)",
        route_name="x f(x|t)",
    )
    shapes = [(0.5, 1.2, 1.5), (0.7, 1.5, 1.8), (0.3, 0.8, 2.0)]
    three = [(s, t, x) for s in shapes for t in (0.5, 1.0, 2.0) for x in (0.5, 1.0, 2.0)]
    rescaled = compare_values(
        "kernel_rescaling",
        [{"alpha": s[0], "beta": s[1], "gamma": s[2], "t": t, "x": x} for s, t, x in three],
        [_direct_kernel(PollardParams(*s), x, t) for s, t, x in three],
        [conv_kernel_w(PollardParams(*s), x, t, check=False) for s, t, x in three],
        _tol(tol, 1e-7),
        reference="rescaled",
        route_name="direct",
    )
    return SuiteResult(suite="scaling", reports=[one_param, rescaled])


def _tilted_suite(tol: Optional[float], workers: int = 1, **_) -> SuiteResult:
    x_grid = 0.5 * np.arange(1, 9)
    plain = TiltParams(StableIndex(0.5), 0.0)
    reports = [cross_validate(
        {
            "series": _series_route(MLParams(0.5, 1.0, 1.0), 1.0),
            "tilted_pollard": lambda xs: tilted_h(plain, 1.0, xs, method="pollard"),
        },
        x_grid,
        _tol(tol, 1e-6),
        reference="series",
        suite_name="tilted(theta=0)",
        workers=workers,
    )]
    for theta in (0.5, -0.25):
        tp = TiltParams(StableIndex(0.5), theta)
        reports.append(cross_validate(
            {
                "pollard": lambda xs, _tp=tp: tilted_h(_tp, 1.0, xs, method="pollard"),
                "mixture": lambda xs, _tp=tp: tilted_h(_tp, 1.0, xs, method="mixture"),
            },
            x_grid,
            _tol(tol, 1e-6),
            reference="pollard",
            suite_name=f"tilted(theta={theta})",
            workers=workers,
        ))
    reports.append(radon_nikodym_report(TiltParams(StableIndex(0.5), 0.5), [0.5, 1.0, 2.0], _tol(tol, 1e-4)))
    return SuiteResult(suite="tilted", reports=reports)


def _spectral_suite(tol: Optional[float], **_) -> SuiteResult:
    mass_cases = [(a, lam) for a in STABLE_ALPHAS for lam in (0.5, 1.0, 2.0)]
    reports = [compare_values(
        "spectral_mass",
        [{"alpha": a, "lambda": lam} for a, lam in mass_cases],
        [spectral_mass(a, lam) for a, lam in mass_cases],
        [1.0] * len(mass_cases),
        _tol(tol, 1e-6),
        reference="E_alpha(0)",
        route_name="mass",
    )]
    u_grid = np.logspace(-4, 4, 81)
    for params in (MLParams(0.5, 1.0, 1.0), MLParams(0.7, 1.0, 1.0), MLParams(0.5, 0.9, 1.5)):
        reports.append(spectral_sign_report(params, 1.0, u_grid, tol=_tol(tol, 1e-9)))

    x_grid = np.array([0.5, 1.0, 2.0])
    for alpha, beta, gamma in [(0.5, 1.0, 1.0), (0.5, 1.2, 1.5)]:
        params = MLParams(alpha, beta, gamma)
        t = 1.0
        reports.append(compare_values(
            f"spectral_s({alpha},{beta},{gamma})",
            [{"x": x} for x in x_grid],
            spectral_laplace_s(params, t, x_grid),
            conv_kernel_w(PollardParams.from_ml(params), x_grid, t, check=False),
            _tol(tol, 1e-6),
            reference="rho * f(.|t)",
            route_name="spectral",
        ))
    return SuiteResult(suite="spectral", reports=reports)


SUITES: Dict[str, Callable[..., SuiteResult]] = {
    "cm": _cm_suite,
    "routes": _routes_suite,
    "laplace": _laplace_suite,
    "duality": _duality_suite,
    "feller": _feller_suite,
    "limit": _limit_suite,
    "scaling": _scaling_suite,
    "tilted": _tilted_suite,
    "spectral": _spectral_suite,
}
SUITE_NAMES: List[str] = list(SUITES) + ["all"]


def run_suite(name: str, tol: Optional[float] = None, perturb: float = 0.0, workers: int = 1) -> SuiteResult:
    """Run one named suite, or every suite for 'all'."""
    if tol is not None and not tol > 0:
        raise DomainError(f"tolerance must be positive, got {tol}")
    if name == "all":
        parts = [run_suite(suite, tol, perturb, workers) for suite in SUITES]
        return SuiteResult(
            suite="all",
            reports=[r for part in parts for r in part.reports],
            certificates=[c for part in parts for c in part.certificates],
            limit_reports=[l for part in parts for l in part.limit_reports],
        )
    if name not in SUITES:
        raise DomainError(f"unknown suite {name!r}; choose from {', '.join(SUITE_NAMES)}")
    logger.info("running suite %s", name)
    result = SUITES[name](tol=tol, perturb=perturb, workers=workers)
    logger.info("suite %s: %d checks, passed=%s", name, result.check_count, result.passed)
    return result

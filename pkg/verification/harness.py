# verification/harness.py

"""
Verification primitives: finite-difference complete-monotonicity
certificates, cross-validation of independent routes, Laplace-identity
checks and the limit-theorem convergence table.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Dict, List, Mapping, Optional, Sequence

import numpy as np

from mittag_engine import (
    DomainError,
    MLParams,
    PollardParams,
    TiltParams,
    evaluate_ml,
    limit_target,
    ml_via_limit_sequence,
    pollard_cdf,
    spectral_density_r_values,
    spectral_sign_scan,
    tilted_pollard_cdf,
)
from mittag_engine.stable import tilt_constant
from numerics import NumericsError, QuadratureConfig, integrate_semi_infinite
from verification.reports import (
    CaseRecord,
    CMCertificate,
    LimitReport,
    LimitRow,
    TableauRow,
    ValidationReport,
    Violation,
)

logger = logging.getLogger(__name__)

UNIFORM_RTOL = 1e-9
LAPLACE_CONFIG = QuadratureConfig(abs_tol=1e-12, rel_tol=1e-10)


class EvaluationError(NumericsError):
    """The function under test failed at a grid point."""

    def __init__(self, x: float, cause: Exception):
        self.x = x
        super().__init__(f"evaluation failed at x={x!r}: {cause}")


def check_complete_monotonicity(
    f: Callable[[float], float],
    grid: Sequence[float],
    k_max: int = 8,
    tol: float = 1e-7,
    label: str = "f",
) -> CMCertificate:
    """Certify (-1)^k Delta^k f >= -tol on a uniform grid for k = 0..k_max.

    Raises:
        DomainError: the grid is not uniform or has no more than k_max points.
        EvaluationError: f failed or returned a non-finite value at a point.
    """
    xs = np.asarray(grid, dtype=float)
    if xs.size < max(k_max + 1, 2):
        raise DomainError(f"grid needs at least {max(k_max + 1, 2)} points for order {k_max}")
    steps = np.diff(xs)
    if np.any(steps <= 0) or not np.allclose(steps, steps[0], rtol=UNIFORM_RTOL, atol=0.0):
        raise DomainError("complete-monotonicity grid must be uniform and increasing")

    values = np.empty_like(xs)
    for i, x in enumerate(xs):
        try:
            values[i] = float(f(float(x)))
        except Exception as e:
            raise EvaluationError(float(x), e) from e
        if not np.isfinite(values[i]):
            raise EvaluationError(float(x), ValueError("non-finite value"))

    tableau: List[TableauRow] = []
    violations: List[Violation] = []
    for k in range(k_max + 1):
        signed = (-1.0) ** k * np.diff(values, n=k)
        bad = np.nonzero(signed < -tol)[0]
        tableau.append(TableauRow(order=k, min_signed_difference=float(np.min(signed)), violations=int(bad.size)))
        violations.extend(Violation(order=k, index=int(i), x=float(xs[i]), value=float(signed[i])) for i in bad)

    if violations:
        logger.info("%s: %d complete-monotonicity violations", label, len(violations))
    return CMCertificate(
        label=label,
        grid=[float(x) for x in xs],
        max_order=k_max,
        tolerance=tol,
        tableau=tableau,
        violations=violations,
    )


def _evaluate_route(route: Callable, xs: np.ndarray):
    """(values, errors) for a vectorised route; falls back point by point to localise failures."""
    try:
        values = np.asarray(route(xs), dtype=float).reshape(xs.shape)
        return [float(v) for v in values], [None] * xs.size
    except (NumericsError, ValueError, ArithmeticError) as batch_error:
        logger.warning("route failed on the whole grid (%s); retrying point by point", batch_error)
    values: List[Optional[float]] = []
    errors: List[Optional[str]] = []
    for x in xs:
        try:
            values.append(float(np.asarray(route(np.array([x]))).ravel()[0]))
            errors.append(None)
        except (NumericsError, ValueError, ArithmeticError) as e:
            values.append(None)
            errors.append(f"{type(e).__name__}: {e}")
    return values, errors


def cross_validate(
    routes: Mapping[str, Callable[[np.ndarray], np.ndarray]],
    grid: Sequence[float],
    tol: float,
    reference: Optional[str] = None,
    suite_name: str = "cross_validate",
    input_name: str = "x",
    workers: int = 1,
) -> ValidationReport:
    """Evaluate every route on the grid and compare them pointwise.

    Routes take an array of inputs and return an array of values. A route
    failure is recorded on its case and the remaining cases still run.
    Cases come out sorted by input whatever the evaluation order.
    """
    if len(routes) < 2:
        raise DomainError("cross-validation needs at least two routes")
    xs = np.sort(np.asarray(grid, dtype=float))
    names = list(routes)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(lambda name: _evaluate_route(routes[name], xs), names))
    else:
        outcomes = [_evaluate_route(routes[name], xs) for name in names]
    by_route = dict(zip(names, outcomes))

    cases = []
    for i, x in enumerate(xs):
        values = {name: by_route[name][0][i] for name in names}
        failures = [f"{name}: {by_route[name][1][i]}" for name in names if by_route[name][1][i]]
        if failures:
            cases.append(CaseRecord(
                inputs={input_name: float(x)},
                route_values=values,
                max_discrepancy=None,
                tolerance=tol,
                passed=False,
                error="; ".join(failures),
            ))
            continue
        numbers = np.array(list(values.values()))
        spread = float(np.max(numbers) - np.min(numbers))
        cases.append(CaseRecord(
            inputs={input_name: float(x)},
            route_values=values,
            max_discrepancy=spread,
            tolerance=tol,
            passed=spread <= tol,
        ))

    return ValidationReport(
        suite_name=suite_name,
        reference=reference or names[0],
        tolerances={"absolute": tol},
        cases=cases,
    )


def compare_values(
    suite_name: str,
    inputs: Sequence[Dict[str, float]],
    computed: Sequence[float],
    expected: Sequence[float],
    tol: float,
    reference: str,
    route_name: str = "computed",
) -> ValidationReport:
    """Report for computed values against known reference values."""
    cases = []
    for point, value, target in zip(inputs, computed, expected):
        gap = abs(float(value) - float(target))
        cases.append(CaseRecord(
            inputs={k: float(v) for k, v in point.items()},
            route_values={route_name: float(value), reference: float(target)},
            max_discrepancy=gap,
            tolerance=tol,
            passed=gap <= tol,
        ))
    return ValidationReport(suite_name=suite_name, reference=reference, tolerances={"absolute": tol}, cases=cases)


def check_laplace_identity(
    f: Callable,
    closed_form: Callable[[float], float],
    s_grid: Sequence[float],
    tol: float,
    suite_name: str = "laplace_identity",
    decay_cutoff: float = 46.0,
    vectorized: bool = False,
) -> ValidationReport:
    """Compare int_0^inf e^{-s x} f(x) dx with closed_form(s) for each s.

    f is only evaluated where s*x <= decay_cutoff; it is assumed to grow at
    most polynomially so that the skipped range is negligible.
    """
    cases = []
    for s in sorted(float(v) for v in s_grid):
        def integrand(x, _s=s):
            out = np.zeros_like(x)
            live = _s * x <= decay_cutoff
            if np.any(live):
                xl = x[live]
                fx = f(xl) if vectorized else np.array([f(float(v)) for v in xl])
                out[live] = np.exp(-_s * xl) * fx
            return out

        try:
            numeric = integrate_semi_infinite(integrand, LAPLACE_CONFIG).value
            target = float(closed_form(s))
        except (NumericsError, ValueError, ArithmeticError) as e:
            cases.append(CaseRecord(
                inputs={"s": s}, route_values={"numeric": None, "closed_form": None},
                max_discrepancy=None, tolerance=tol, passed=False, error=f"{type(e).__name__}: {e}",
            ))
            continue
        gap = abs(numeric - target)
        cases.append(CaseRecord(
            inputs={"s": s},
            route_values={"numeric": numeric, "closed_form": target},
            max_discrepancy=gap,
            tolerance=tol,
            passed=gap <= tol,
        ))
    return ValidationReport(suite_name=suite_name, reference="closed_form", tolerances={"absolute": tol}, cases=cases)


def bernstein_composition_check(
    params: MLParams,
    lambda_: float,
    a2: float,
    grid: Sequence[float],
    k_max: int = 8,
    tol: float = 1e-7,
) -> CMCertificate:
    """CM certificate for x -> E^gamma_{alpha,beta}(-lambda x^a2), a Bernstein composition for 0 < a2 <= 1."""
    if not 0.0 < a2 <= 1.0:
        raise DomainError(f"inner exponent must satisfy 0 < a2 <= 1, got {a2}")
    label = f"E({params.alpha},{params.beta},{params.gamma})(-{lambda_} x^{a2})"
    return check_complete_monotonicity(
        lambda x: evaluate_ml(params, -lambda_ * x ** a2), grid, k_max=k_max, tol=tol, label=label
    )


def _extrapolate(eps: np.ndarray, values: np.ndarray) -> float:
    """Polynomial extrapolation to eps = 0 through the last (up to three) points."""
    points = min(3, eps.size)
    coeffs = np.polyfit(eps[-points:], values[-points:], points - 1)
    return float(np.polyval(coeffs, 0.0))


def limit_convergence_report(
    params: PollardParams,
    lambda_: float,
    x: float,
    mu_list: Sequence[float],
    n_list: Sequence[int],
    error_tol: float = 1e-3,
    agreement_tol: float = 1e-4,
) -> LimitReport:
    """Table of (n/mu) m(x | mu/n, lambda) against Gamma(gamma) x^(beta-1) E(-lambda x^alpha).

    The raw sequence carries an O(mu/n) bias; the extrapolated column removes
    the leading terms and is what the tolerances apply to.
    """
    ns = np.sort(np.asarray(n_list, dtype=int))
    if ns.size < 2:
        raise DomainError("limit report needs at least two n values")
    reference = limit_target(params, lambda_, x)

    rows: List[LimitRow] = []
    extrapolated: Dict[str, float] = {}
    extrapolated_errors: Dict[str, float] = {}
    orders: Dict[str, Optional[float]] = {}
    shrinking = True
    for mu in mu_list:
        values = ml_via_limit_sequence(params, lambda_, x, ns, mu)
        errors = np.abs(values - reference)
        rows.extend(
            LimitRow(mu=float(mu), n=int(n), value=float(v), error=float(e))
            for n, v, e in zip(ns, values, errors)
        )
        key = f"{mu:g}"
        extrapolated[key] = _extrapolate(mu / ns.astype(float), values)
        extrapolated_errors[key] = abs(extrapolated[key] - reference)
        orders[key] = (
            float(np.log(errors[-2] / errors[-1]) / np.log(ns[-1] / ns[-2]))
            if errors[-1] > 0 and errors[-2] > 0
            else None
        )
        shrinking = shrinking and bool(errors[-1] < errors[0])

    limits = np.array(list(extrapolated.values()))
    return LimitReport(
        params={"alpha": params.alpha.alpha, "beta": params.beta, "gamma": params.gamma, "lambda": lambda_, "x": x},
        reference=reference,
        rows=rows,
        extrapolated=extrapolated,
        extrapolated_errors=extrapolated_errors,
        observed_orders=orders,
        error_tolerance=error_tol,
        agreement_tolerance=agreement_tol,
        shrinking=shrinking,
        mu_spread=float(np.max(limits) - np.min(limits)),
    )


def spectral_sign_report(
    params: MLParams,
    lambda_: float,
    u_grid: Sequence[float],
    tol: float = 1e-9,
) -> ValidationReport:
    """Nonnegativity of dR/du on a grid; negative values are reported as failed cases."""
    grid = np.asarray(u_grid, dtype=float)
    minimum, negative = spectral_sign_scan(params, lambda_, grid, tol)
    flagged = {u for u, _ in negative}
    values = spectral_density_r_values(params, lambda_, grid)
    cases = [
        CaseRecord(
            inputs={"u": float(u)},
            route_values={"dR/du": float(v)},
            max_discrepancy=max(0.0, -float(v)),
            tolerance=tol,
            passed=float(u) not in flagged,
        )
        for u, v in zip(grid, values)
    ]
    notes = [f"minimum dR/du = {minimum:.6g}"]
    if params.beta > 1.0:
        notes.append("beta > 1: dR/du has a negative tail ~ sin(pi beta) u^(-beta) / pi")
    return ValidationReport(
        suite_name=f"spectral_sign({params.alpha},{params.beta},{params.gamma})",
        reference="zero",
        tolerances={"absolute": tol},
        cases=cases,
        notes=notes,
    )


def radon_nikodym_report(
    tp: TiltParams,
    t_grid: Sequence[float],
    tol: float = 1e-4,
    step: float = 1e-3,
) -> ValidationReport:
    """dP_{alpha,theta}/dP_alpha(t) from centred CDF differences against its closed form.

    The closed form is Gamma(theta+1)/Gamma(theta/alpha+1) t^(theta/alpha),
    the plain law being the one-parameter Pollard law of the same alpha.
    """
    ts = np.asarray(sorted(float(t) for t in t_grid))
    if np.any(ts - step <= 0):
        raise DomainError("Radon-Nikodym grid must stay above the difference step")
    edges = np.concatenate([ts - step, ts + step])
    tilted = np.asarray(tilted_pollard_cdf(tp, edges))
    plain = np.asarray(pollard_cdf(PollardParams(tp.alpha, 1.0, 1.0), edges))
    n = ts.size
    ratio = (tilted[n:] - tilted[:n]) / (plain[n:] - plain[:n])
    expected = tilt_constant(tp) * ts ** (tp.theta / tp.alpha.alpha)
    return compare_values(
        f"radon_nikodym({tp.alpha.alpha},theta={tp.theta})",
        [{"t": t} for t in ts],
        ratio,
        expected,
        tol,
        reference="closed_form",
        route_name="cdf_ratio",
    )

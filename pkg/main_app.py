"""
MLCM - Mittag-Leffler complete-monotonicity toolkit
Command-line front end: pointwise evaluation, tables, densities and
distribution functions, verification suites and the limit demonstration.

    python main_app.py eval --alpha 0.5 --x -1 --method series
    python main_app.py verify --suite cm --format json
"""

import json
import logging
import sys
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import click
import numpy as np
import pandas as pd
from scipy.special import gammaln

import settings
from database.run_logs import log_suite
from mittag_engine import (
    DomainError,
    MethodDisagreementError,
    MLParams,
    PollardParams,
    ScaledStable,
    TiltParams,
    feller_mixture,
    ml_series_result,
    ml_via_limit,
    ml_via_pollard,
    ml_via_spectral,
    pollard_cdf,
    pollard_density,
    spectral_density_r_values,
    stable_cdf_scaled,
    stable_density_scaled,
    tilted_pollard_cdf,
    tilted_stable_density,
)
from numerics import ConvergenceError, NumericsError
from verification import SUITE_NAMES, cross_validate, limit_convergence_report, run_suite

__version__ = "1.0.0"

logger = logging.getLogger("mlcm")

EXIT_OK = 0
EXIT_VERIFICATION_FAILED = 1
EXIT_USAGE = 2
EXIT_NUMERICAL = 3

ROUTES = ["series", "pollard", "spectral", "limit"]
CSV_COLUMNS = ["x", "value", "error_estimate", "method"]


# ============================================================================
# FORMATTING
# ============================================================================

def _digits(full_precision: bool) -> int:
    return 17 if full_precision else 10


def _round(value: Optional[float], digits: int) -> Optional[float]:
    """Shortest float carrying `digits` significant digits; None for missing values."""
    if value is None or not np.isfinite(value):
        return None
    return float(f"{value:.{digits}g}")


def _frame(xs, values, errors, method: str) -> pd.DataFrame:
    n = len(xs)
    return pd.DataFrame({
        "x": np.asarray(xs, dtype=float),
        "value": np.asarray(values, dtype=float),
        "error_estimate": np.full(n, np.nan) if errors is None else np.asarray(errors, dtype=float),
        "method": [method] * n,
    }, columns=CSV_COLUMNS)


def _render_frame(frame: pd.DataFrame, fmt: str, meta: Dict, full_precision: bool) -> str:
    digits = _digits(full_precision)
    if fmt == "csv":
        return frame.to_csv(index=False, float_format=f"%.{digits}g", lineterminator="\n")
    if fmt == "json":
        records = []
        for row in frame.to_dict(orient="records"):
            records.append({
                key: _round(val, digits) if isinstance(val, float) else val
                for key, val in row.items()
            })
        return _dumps({"meta": meta, "data": records})
    raise DomainError(f"unsupported table format {fmt!r}")


def _dumps(document: Dict) -> str:
    return json.dumps(document, indent=2, sort_keys=True) + "\n"


def _emit(text: str, output: Optional[str]) -> None:
    if output:
        with open(output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)


def _meta(command: str, **fields) -> Dict:
    meta = {"command": command, "version": __version__}
    meta.update({k: v for k, v in fields.items() if v is not None})
    return meta


def _parse_list(raw: str, cast: Callable, name: str) -> List:
    try:
        values = [cast(part) for part in raw.split(",") if part.strip()]
    except ValueError:
        raise click.BadParameter(f"expected comma-separated numbers, got {raw!r}", param_hint=name)
    if not values:
        raise click.BadParameter("list is empty", param_hint=name)
    return values


# ============================================================================
# ROUTES
# ============================================================================

def _abscissae(params: MLParams, lambda_: Optional[float], xs: np.ndarray) -> Tuple[float, np.ndarray]:
    """(rate, abscissae) such that E(-rate * abscissa^alpha) is the requested value.

    Without --lambda the inputs are Mittag-Leffler arguments z <= 0, mapped to
    rate 1 and abscissa (-z)^(1/alpha).
    """
    if lambda_ is not None:
        if np.any(xs < 0):
            raise DomainError("with --lambda the abscissa x must be non-negative")
        return lambda_, xs
    if not 0.0 < params.alpha < 1.0:
        raise DomainError("integral routes need 0 < alpha < 1")
    if np.any(xs > 0):
        raise DomainError("integral routes evaluate E(z) for z <= 0 only")
    return 1.0, (-xs) ** (1.0 / params.alpha)


def _evaluate_route(
    method: str,
    params: MLParams,
    lambda_: Optional[float],
    xs: np.ndarray,
    n: int,
    mu: float,
) -> Tuple[np.ndarray, Optional[np.ndarray]]:
    """Values (and error estimates where the route has them) of one route on xs."""
    if method == "series":
        if lambda_ is None:
            arguments = xs
        else:
            if np.any(xs < 0):
                raise DomainError("with --lambda the abscissa x must be non-negative")
            arguments = -lambda_ * xs ** params.alpha
        results = [ml_series_result(params, float(z)) for z in arguments]
        for result, z in zip(results, arguments):
            if not result.converged:
                raise ConvergenceError(f"series did not converge at z={z}", result)
        return np.array([r.value for r in results]), np.array([r.error_estimate for r in results])

    rate, abscissae = _abscissae(params, lambda_, xs)
    if method == "pollard":
        return np.asarray(ml_via_pollard(PollardParams.from_ml(params), rate, abscissae)), None
    if method == "spectral":
        return np.asarray(ml_via_spectral(params, rate, abscissae)), None
    if method == "limit":
        if np.any(abscissae <= 0):
            raise DomainError("the limit route needs a non-zero argument")
        scaled = ml_via_limit(PollardParams.from_ml(params), rate, abscissae, n, mu)
        norm = np.exp(gammaln(params.gamma) + (params.beta - 1.0) * np.log(abscissae))
        return np.asarray(scaled) / norm, None
    raise DomainError(f"unknown method {method!r}")


# ============================================================================
# CLI
# ============================================================================

@click.group()
@click.version_option(version=__version__, prog_name="mlcm")
@click.option("--verbose", is_flag=True, help="Log debug messages to stderr")
def cli(verbose: bool):
    """
    Mittag-Leffler functions through series, Pollard and spectral routes.

    Examples:

        mlcm eval --alpha 0.5 --x -1 --method series

        mlcm table --alpha 0.5 --x-min 0 --x-max 5 --steps 11 --lambda 1

        mlcm verify --suite routes --format text
    """
    level = logging.DEBUG if verbose else settings.get_log_level()
    logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")


def _ml_options(command):
    command = click.option("--gamma", type=float, default=1.0, show_default=True)(command)
    command = click.option("--beta", type=float, default=1.0, show_default=True)(command)
    command = click.option("--alpha", type=float, required=True)(command)
    return command


@cli.command("eval")
@_ml_options
@click.option("--lambda", "lambda_", type=float, default=None,
              help="Evaluate E(-lambda x^alpha) at abscissa x instead of E(x)")
@click.option("--x", "x", type=float, required=True, help="Argument z, or abscissa with --lambda")
@click.option("--method", type=click.Choice(ROUTES + ["all"]), default="series", show_default=True)
@click.option("--n", "n", type=click.IntRange(min=1), default=64, show_default=True)
@click.option("--mu", type=float, default=1.0, show_default=True)
@click.option("--tol", type=float, default=None, help="Agreement tolerance for --method all")
@click.option("--format", "fmt", type=click.Choice(["text", "csv", "json"]), default="text", show_default=True)
@click.option("--full-precision", is_flag=True, help="17 significant digits")
@click.option("--output", "-o", type=click.Path(dir_okay=False), default=None)
def eval_command(alpha, beta, gamma, lambda_, x, method, n, mu, tol, fmt, full_precision, output):
    """
    Evaluate E^gamma_{alpha,beta} at one point.

    Examples:

        mlcm eval --alpha 0.5 --x -1               # 0.4275835762

        mlcm eval --alpha 0.5 --beta 1.2 --gamma 1.5 --x -1 --method all
    """
    params = MLParams(alpha, beta, gamma)
    xs = np.array([x])
    digits = _digits(full_precision)
    meta = _meta("eval", alpha=alpha, beta=beta, gamma=gamma, **{"lambda": lambda_}, method=method)

    if method != "all":
        values, errors = _evaluate_route(method, params, lambda_, xs, n, mu)
        if method == "limit":
            meta.update(n=n, mu=mu)
        if fmt == "text":
            _emit(f"{values[0]:.{digits}g}\n", output)
        else:
            _emit(_render_frame(_frame(xs, values, errors, method), fmt, meta, full_precision), output)
        return EXIT_OK

    tol = tol if tol is not None else settings.get_default_tol()
    # integral routes need the Pollard family and z <= 0; a bad argument is a usage error
    PollardParams.from_ml(params)
    _abscissae(params, lambda_, xs)
    routes = {
        "series": lambda v: _evaluate_route("series", params, lambda_, v, n, mu)[0],
        "pollard": lambda v: _evaluate_route("pollard", params, lambda_, v, n, mu)[0],
    }
    if params.beta - params.alpha * params.gamma < 1.0:
        routes["spectral"] = lambda v: _evaluate_route("spectral", params, lambda_, v, n, mu)[0]
    report = cross_validate(routes, xs, tol, reference="series", suite_name="eval", input_name="x")
    meta["tolerance"] = tol
    case = report.cases[0]

    if fmt == "json":
        _emit(_dumps({"meta": meta, "report": report.model_dump(mode="json")}), output)
    elif fmt == "csv":
        names = list(case.route_values)
        values = [np.nan if case.route_values[name] is None else case.route_values[name] for name in names]
        frame = _frame([x] * len(names), values, None, "")
        frame["method"] = names
        _emit(_render_frame(frame, fmt, meta, full_precision), output)
    else:
        lines = [
            f"{name}\t{'failed' if value is None else format(value, f'.{digits}g')}"
            for name, value in case.route_values.items()
        ]
        spread = "n/a" if case.max_discrepancy is None else f"{case.max_discrepancy:.3g}"
        lines.append(f"{'PASS' if report.passed else 'FAIL'} max discrepancy {spread} (tol {tol:g})")
        _emit("\n".join(lines) + "\n", output)
    return EXIT_OK if report.passed else EXIT_VERIFICATION_FAILED


def _grid(x_min: float, x_max: float, steps: int) -> np.ndarray:
    if not x_max > x_min:
        raise click.BadParameter("--x-max must exceed --x-min", param_hint="--x-max")
    return np.linspace(x_min, x_max, steps)


def _range_options(command):
    command = click.option("--steps", type=click.IntRange(min=2), default=11, show_default=True)(command)
    command = click.option("--x-max", type=float, required=True)(command)
    command = click.option("--x-min", type=float, required=True)(command)
    return command


@cli.command()
@_ml_options
@click.option("--lambda", "lambda_", type=float, default=None,
              help="Tabulate E(-lambda x^alpha) over abscissae x instead of E(x)")
@_range_options
@click.option("--method", type=click.Choice(ROUTES), default="series", show_default=True)
@click.option("--n", "n", type=click.IntRange(min=1), default=64, show_default=True)
@click.option("--mu", type=float, default=1.0, show_default=True)
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default="csv", show_default=True)
@click.option("--full-precision", is_flag=True)
@click.option("--output", "-o", type=click.Path(dir_okay=False), default=None)
def table(alpha, beta, gamma, lambda_, x_min, x_max, steps, method, n, mu, fmt, full_precision, output):
    """
    Tabulate one route of E^gamma_{alpha,beta} over a uniform grid.

    Examples:

        mlcm table --alpha 0.5 --x-min -5 --x-max 0 --steps 21 --method pollard
    """
    params = MLParams(alpha, beta, gamma)
    xs = _grid(x_min, x_max, steps)
    values, errors = _evaluate_route(method, params, lambda_, xs, n, mu)
    meta = _meta("table", alpha=alpha, beta=beta, gamma=gamma, **{"lambda": lambda_}, method=method)
    _emit(_render_frame(_frame(xs, values, errors, method), fmt, meta, full_precision), output)
    return EXIT_OK


def _family_options(command):
    command = click.option("--t", "t", type=float, default=1.0, show_default=True, help="Stable time scale")(command)
    command = click.option("--theta", type=float, default=0.0, show_default=True)(command)
    command = click.option("--lambda", "lambda_", type=float, default=1.0, show_default=True)(command)
    return _ml_options(command)


@cli.command()
@click.option("--family", type=click.Choice(["stable", "pollard", "spectral", "tilted"]), required=True)
@_family_options
@_range_options
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default="csv", show_default=True)
@click.option("--full-precision", is_flag=True)
@click.option("--output", "-o", type=click.Path(dir_okay=False), default=None)
def density(family, alpha, beta, gamma, lambda_, theta, t, x_min, x_max, steps, fmt, full_precision, output):
    """
    Tabulate a density: stable f(x|t), Pollard dP/du, spectral dR/du or tilted stable.
    """
    xs = _grid(x_min, x_max, steps)
    if family == "stable":
        values = stable_density_scaled(ScaledStable(alpha, t), xs)
    elif family == "pollard":
        values = pollard_density(PollardParams(alpha, beta, gamma), xs)
    elif family == "spectral":
        if np.any(xs <= 0):
            raise DomainError("spectral density needs u > 0")
        values = spectral_density_r_values(MLParams(alpha, beta, gamma), lambda_, xs)
    else:
        values = tilted_stable_density(TiltParams(alpha, theta), xs, t)
    meta = _meta("density", family=family, alpha=alpha, beta=beta, gamma=gamma,
                 theta=theta, t=t, **{"lambda": lambda_})
    _emit(_render_frame(_frame(xs, values, None, family), fmt, meta, full_precision), output)
    return EXIT_OK


@cli.command()
@click.option("--family", type=click.Choice(["stable", "pollard", "tilted", "feller"]), required=True)
@_family_options
@_range_options
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default="csv", show_default=True)
@click.option("--full-precision", is_flag=True)
@click.option("--output", "-o", type=click.Path(dir_okay=False), default=None)
def cdf(family, alpha, beta, gamma, lambda_, theta, t, x_min, x_max, steps, fmt, full_precision, output):
    """
    Tabulate a distribution function: stable, Pollard, tilted Pollard or Feller's mixture.
    """
    xs = _grid(x_min, x_max, steps)
    if family == "stable":
        values = stable_cdf_scaled(ScaledStable(alpha, t), xs)
    elif family == "pollard":
        values = pollard_cdf(PollardParams(alpha, beta, gamma), xs)
    elif family == "tilted":
        values = tilted_pollard_cdf(TiltParams(alpha, theta), xs)
    else:
        if np.any(xs <= 0):
            raise DomainError("Feller's mixture is tabulated for x > 0")
        values = feller_mixture(alpha, lambda_, xs)
    meta = _meta("cdf", family=family, alpha=alpha, beta=beta, gamma=gamma,
                 theta=theta, t=t, **{"lambda": lambda_})
    _emit(_render_frame(_frame(xs, values, None, family), fmt, meta, full_precision), output)
    return EXIT_OK


def _suite_text(result) -> str:
    lines = []
    for report in result.reports:
        worst = report.worst_case
        spread = worst.max_discrepancy if worst is not None else None
        shown = "error" if spread is None else f"{spread:.3g}"
        lines.append(f"{'PASS' if report.passed else 'FAIL'}  {report.suite_name}  worst={shown}")
    for cert in result.certificates:
        lines.append(f"{'PASS' if cert.passed else 'FAIL'}  {cert.label}  violations={len(cert.violations)}")
    for limit in result.limit_reports:
        worst = max(limit.extrapolated_errors.values())
        lines.append(f"{'PASS' if limit.passed else 'FAIL'}  limit {limit.params}  extrapolated_error={worst:.3g}")
    lines.append(f"{result.suite}: {result.check_count - len(result.failed_checks)}/{result.check_count} checks passed")
    return "\n".join(lines) + "\n"


@cli.command()
@click.option("--suite", type=click.Choice(SUITE_NAMES), default="all", show_default=True)
@click.option("--tol", type=float, default=None, help="Replace every check's tolerance")
@click.option("--format", "fmt", type=click.Choice(["json", "text"]), default="json", show_default=True)
@click.option("--perturb", type=float, default=0.0, show_default=True,
              help="Add perturb*x to the series route (harness self-test)")
@click.option("--workers", type=click.IntRange(min=1), default=1, show_default=True)
@click.option("--record-db", type=click.Path(dir_okay=False), default=None,
              help="Append the reports to this SQLite run history")
@click.option("--output", "-o", type=click.Path(dir_okay=False), default=None)
def verify(suite, tol, fmt, perturb, workers, record_db, output):
    """
    Run a verification suite; exit status 1 when any check fails.

    Examples:

        mlcm verify --suite cm --tol 1e-6 --format json

        mlcm verify --suite routes --perturb 1e-3 --tol 1e-5   # must fail
    """
    if tol is None:
        tol = settings.get_env_tol()
    result = run_suite(suite, tol=tol, perturb=perturb, workers=workers)

    if fmt == "json":
        meta = _meta("verify", suite=suite, tolerance=tol, perturb=perturb)
        _emit(_dumps({"meta": meta, "report": result.model_dump(mode="json")}), output)
    else:
        _emit(_suite_text(result), output)

    db_path = record_db or settings.get_run_db_path()
    if db_path:
        rows = log_suite(result, f"verify --suite {suite}", db_path)
        logger.info("recorded %d reports in %s", rows, db_path)
    return EXIT_OK if result.passed else EXIT_VERIFICATION_FAILED


@cli.command("limit-demo")
@_ml_options
@click.option("--lambda", "lambda_", type=float, default=1.0, show_default=True)
@click.option("--x", "x", type=float, default=1.0, show_default=True)
@click.option("--mu-list", default="0.5,1,2", show_default=True)
@click.option("--n-list", default="1,2,4,8,16,32,64", show_default=True)
@click.option("--format", "fmt", type=click.Choice(["csv", "json", "text"]), default="csv", show_default=True)
@click.option("--full-precision", is_flag=True)
@click.option("--output", "-o", type=click.Path(dir_okay=False), default=None)
def limit_demo(alpha, beta, gamma, lambda_, x, mu_list, n_list, fmt, full_precision, output):
    """
    Show (n/mu) m(x | mu/n, lambda) approaching Gamma(gamma) x^(beta-1) E(-lambda x^alpha).
    """
    mus = _parse_list(mu_list, float, "--mu-list")
    ns = _parse_list(n_list, int, "--n-list")
    report = limit_convergence_report(PollardParams(alpha, beta, gamma), lambda_, x, mus, ns)
    digits = _digits(full_precision)

    if fmt == "json":
        meta = _meta("limit-demo", alpha=alpha, beta=beta, gamma=gamma, x=x, **{"lambda": lambda_})
        _emit(_dumps({"meta": meta, "report": report.model_dump(mode="json")}), output)
        return EXIT_OK

    frame = pd.DataFrame([row.model_dump() for row in report.rows], columns=["mu", "n", "value", "error"])
    if fmt == "csv":
        _emit(frame.to_csv(index=False, float_format=f"%.{digits}g", lineterminator="\n"), output)
        return EXIT_OK
    lines = [f"reference {report.reference:.{digits}g}"]
    lines += [f"mu={r.mu:g}\tn={r.n}\t{r.value:.{digits}g}\terror={r.error:.3g}" for r in report.rows]
    lines += [f"mu={mu}\textrapolated {value:.{digits}g}" for mu, value in report.extrapolated.items()]
    _emit("\n".join(lines) + "\n", output)
    return EXIT_OK


# ============================================================================
# ENTRY POINT
# ============================================================================

def run(argv: Optional[Sequence[str]] = None) -> int:
    """Run the CLI and map the outcome onto exit codes 0/1/2/3."""
    try:
        status = cli.main(args=list(argv) if argv is not None else None,
                          prog_name="mlcm", standalone_mode=False)
    except click.exceptions.Exit as e:
        return e.exit_code
    except click.UsageError as e:
        e.show()
        return EXIT_USAGE
    except click.ClickException as e:
        e.show()
        return EXIT_USAGE
    except click.Abort:
        click.echo("Aborted!", err=True)
        return EXIT_USAGE
    except DomainError as e:
        click.echo(f"Error: {e}", err=True)
        return EXIT_USAGE
    except (ConvergenceError, MethodDisagreementError) as e:
        click.echo(f"Numerical failure: {e}", err=True)
        return EXIT_NUMERICAL
    except NumericsError as e:
        click.echo(f"Numerical failure: {e}", err=True)
        return EXIT_NUMERICAL
    return EXIT_OK if status is None else int(status)


if __name__ == "__main__":
    raise SystemExit(run())

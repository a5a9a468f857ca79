# numerics/quadrature.py

"""
Double-exponential quadrature on finite and semi-infinite intervals.

Finite intervals use the tanh-sinh map, (0, inf) uses the exp-sinh map. Both
refine by halving the step from h = 1 and reuse every node of the coarser
levels, so level j only evaluates the odd multiples of 2**-j. Integrands are
called with numpy arrays of nodes; a batch integrand returns an array of shape
(n_nodes, *batch) and every problem of the batch is refined together.
"""

import logging
from functools import lru_cache
from typing import Callable, Optional, Tuple

import numpy as np

from numerics.config import DEFAULT_CONFIG, BatchIntegralResult, IntegralResult, QuadratureConfig
from numerics.errors import IntegrandNaNError, QuadratureError

logger = logging.getLogger(__name__)

HALF_PI = 0.5 * np.pi

# Beyond these |t| the tanh-sinh endpoint distance underflows and the exp-sinh
# node leaves [1e-300, 1e300].
FINITE_T_MAX = 6.0
SEMI_INFINITE_T_MAX = 6.7

MAX_BISECTION_DEPTH = 4


@lru_cache(maxsize=None)
def _abscissae(level: int, t_max: float) -> np.ndarray:
    """t-values introduced at `level`: integers at level 0, odd multiples of 2**-level after."""
    if level == 0:
        n = int(np.floor(t_max))
        t = np.arange(-n, n + 1, dtype=float)
    else:
        h = 2.0 ** -level
        n = int(np.floor(t_max / h))
        k = np.arange(-n, n + 1)
        t = k[k % 2 != 0] * h
    t.setflags(write=False)
    return t


@lru_cache(maxsize=None)
def _tanh_sinh_rule(level: int) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(side, distance, weight) on [-1, 1] for the nodes of `level`.

    `distance` is 1 - |x| computed as 2e/(1+e) with e = exp(-2v), so it keeps
    full relative precision right up to the endpoint.
    """
    t = _abscissae(level, FINITE_T_MAX)
    v = HALF_PI * np.sinh(np.abs(t))
    with np.errstate(under="ignore"):
        e = np.exp(-2.0 * v)
    distance = 2.0 * e / (1.0 + e)
    weight = HALF_PI * np.cosh(t) * 4.0 * e / (1.0 + e) ** 2
    keep = (distance > 0) & (weight > 0)
    side = np.where(t[keep] < 0, -1.0, 1.0)
    arrays = (side, distance[keep], weight[keep])
    for arr in arrays:
        arr.setflags(write=False)
    return arrays


@lru_cache(maxsize=None)
def _exp_sinh_rule(level: int) -> Tuple[np.ndarray, np.ndarray]:
    """(node, weight) on (0, inf) for the nodes of `level`."""
    t = _abscissae(level, SEMI_INFINITE_T_MAX)
    with np.errstate(over="ignore", under="ignore"):
        x = np.exp(HALF_PI * np.sinh(t))
        weight = x * HALF_PI * np.cosh(t)
    keep = (x > 0) & np.isfinite(x) & (weight > 0) & np.isfinite(weight)
    arrays = (x[keep], weight[keep])
    for arr in arrays:
        arr.setflags(write=False)
    return arrays


def _evaluate(f: Callable, args: tuple, nodes: np.ndarray) -> np.ndarray:
    n = nodes.shape[0]
    with np.errstate(all="ignore"):
        values = np.asarray(f(*args), dtype=float)
    if values.ndim == 0:
        values = np.broadcast_to(values, (n,))
    elif values.shape[0] != n:
        raise ValueError(
            f"integrand returned shape {values.shape} for {n} nodes; "
            "expected (n_nodes, *batch)"
        )
    finite = np.isfinite(values)
    if not finite.all():
        index = np.argwhere(~finite)[0][0]
        raise IntegrandNaNError(float(nodes[index]))
    return values


def _refine(level_sum: Callable[[int], Tuple[np.ndarray, int]], cfg: QuadratureConfig) -> BatchIntegralResult:
    """Run the level-halving loop shared by both transforms."""
    total = None
    previous = None
    error = None
    estimate = None
    evaluations = 0
    converged = np.asarray(False)

    for level in range(cfg.max_refinements + 1):
        contribution, count = level_sum(level)
        total = contribution if total is None else total + contribution
        evaluations += count
        estimate = (2.0 ** -level) * total
        if previous is not None:
            error = np.abs(estimate - previous)
            converged = error <= cfg.tolerance_for(estimate)
            if level >= cfg.min_refinements and np.all(converged):
                break
        previous = estimate
        if evaluations >= cfg.max_evaluations:
            break

    if error is None:
        error = np.full_like(np.asarray(estimate, dtype=float), np.inf)
        converged = np.zeros_like(error, dtype=bool)
    return BatchIntegralResult(
        values=np.asarray(estimate, dtype=float),
        errors=np.asarray(error, dtype=float),
        evaluations=evaluations,
        converged=np.asarray(converged, dtype=bool),
    )


def integrate_finite_batch(
    f: Callable,
    a: float,
    b: float,
    cfg: Optional[QuadratureConfig] = None,
    endpoint_distances: bool = False,
) -> BatchIntegralResult:
    """Tanh-sinh quadrature of a (batch) integrand over (a, b).

    With `endpoint_distances=True` the integrand is called as
    f(x, x - a, b - x), both distances accurate near the endpoints.
    """
    cfg = cfg or DEFAULT_CONFIG
    a = float(a)
    b = float(b)
    if not (np.isfinite(a) and np.isfinite(b)) or b < a:
        raise ValueError(f"integrate_finite needs finite a <= b, got ({a}, {b})")
    half = 0.5 * (b - a)
    width = b - a

    def level_sum(level: int):
        side, distance, weight = _tanh_sinh_rule(level)
        dist = half * distance
        keep = dist > 0
        side, dist, weight = side[keep], dist[keep], weight[keep]
        left = side < 0
        x = np.where(left, a + dist, b - dist)
        if not endpoint_distances:
            # nodes that round onto an endpoint carry no usable distance
            inside = (x > a) & (x < b)
            dist, weight, left, x = dist[inside], weight[inside], left[inside], x[inside]
        dl = np.where(left, dist, width - dist)
        dr = np.where(left, width - dist, dist)
        args = (x, dl, dr) if endpoint_distances else (x,)
        values = _evaluate(f, args, x)
        return np.tensordot(half * weight, values, axes=(0, 0)), x.size

    return _refine(level_sum, cfg)


def integrate_semi_infinite_batch(
    f: Callable,
    cfg: Optional[QuadratureConfig] = None,
    lower: float = 0.0,
) -> BatchIntegralResult:
    """Exp-sinh quadrature of a (batch) integrand over (lower, inf)."""
    cfg = cfg or DEFAULT_CONFIG

    def level_sum(level: int):
        u, weight = _exp_sinh_rule(level)
        x = lower + u
        values = _evaluate(f, (x,), x)
        return np.tensordot(weight, values, axes=(0, 0)), x.size

    return _refine(level_sum, cfg)


def integrate_finite(
    f: Callable,
    a: float,
    b: float,
    cfg: Optional[QuadratureConfig] = None,
    endpoint_distances: bool = False,
) -> IntegralResult:
    """Integrate a scalar integrand over the finite interval (a, b).

    Args:
        f: vectorised integrand, f(x) or f(x, x - a, b - x).
        a, b: finite endpoints, a <= b.
        cfg: tolerances; DEFAULT_CONFIG when omitted.
        endpoint_distances: pass accurate endpoint distances to `f`.

    Returns:
        IntegralResult. When the transform alone does not converge the
        interval is bisected (up to MAX_BISECTION_DEPTH times) and the better
        of the two estimates is returned.
    """
    cfg = cfg or DEFAULT_CONFIG
    if a == b:
        return IntegralResult(value=0.0, error_estimate=0.0, evaluations=0, converged=True)
    result = integrate_finite_batch(f, a, b, cfg, endpoint_distances).item()
    if result.converged:
        return result

    logger.debug("tanh-sinh did not converge on (%g, %g); bisecting", a, b)
    split = _bisect(f, float(a), float(b), cfg, endpoint_distances, 0.0, 0.0, 1)
    if split.error_estimate < result.error_estimate:
        return split
    return result


def _bisect(f, a, b, cfg, endpoint_distances, left_offset, right_offset, depth) -> IntegralResult:
    mid = 0.5 * (a + b)
    halves = []
    for lo, hi, lo_off, hi_off in ((a, mid, left_offset, right_offset + (b - mid)),
                                   (mid, b, left_offset + (mid - a), right_offset)):
        if endpoint_distances:
            def g(x, dl, dr, _lo=lo_off, _hi=hi_off):
                return f(x, dl + _lo, dr + _hi)
        else:
            g = f
        part = integrate_finite_batch(g, lo, hi, cfg.scaled(0.5), endpoint_distances).item()
        if not part.converged and depth < MAX_BISECTION_DEPTH:
            part = _bisect(f, lo, hi, cfg.scaled(0.5), endpoint_distances, lo_off, hi_off, depth + 1)
        halves.append(part)

    value = halves[0].value + halves[1].value
    error = halves[0].error_estimate + halves[1].error_estimate
    return IntegralResult(
        value=value,
        error_estimate=error,
        evaluations=halves[0].evaluations + halves[1].evaluations,
        converged=bool(error <= cfg.tolerance_for(value)),
    )


def integrate_semi_infinite(
    f: Callable,
    cfg: Optional[QuadratureConfig] = None,
    lower: float = 0.0,
) -> IntegralResult:
    """Integrate a scalar integrand over (lower, inf); lower defaults to 0."""
    result = integrate_semi_infinite_batch(f, cfg, lower).item()
    if not result.converged:
        logger.debug("exp-sinh did not converge: error %.3g", result.error_estimate)
    return result


def require_converged(
    result: BatchIntegralResult,
    cfg: QuadratureConfig,
    what: str,
    failure_factor: float = 1e3,
) -> np.ndarray:
    """Values of a top-level batch result, raising QuadratureError on clear failure.

    Results whose error stays within `failure_factor` times the tolerance are
    accepted with a debug record; nested inner quadratures put a floor under
    the attainable outer error.
    """
    if not result.all_converged:
        tolerance = cfg.tolerance_for(result.values)
        worst = float(np.max(result.errors / tolerance))
        if worst > failure_factor:
            raise QuadratureError(f"{what}: quadrature failed (error {worst:.3g} x tolerance)", result)
        logger.debug("%s: error %.3g x tolerance", what, worst)
    return result.values

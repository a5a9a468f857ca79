import math

import numpy as np
import pytest
from scipy.special import erfc, rgamma

from numerics import (
    BatchIntegralResult,
    CompensatedSum,
    IntegrandNaNError,
    QuadratureConfig,
    QuadratureError,
    SeriesOverflowError,
    integrate_finite,
    integrate_finite_batch,
    integrate_semi_infinite,
    integrate_semi_infinite_batch,
    require_converged,
    sum_series,
)


def test_finite_smooth_integrand():
    result = integrate_finite(np.sin, 0.0, np.pi)
    assert result.converged
    assert result.value == pytest.approx(2.0, abs=1e-12)


def test_finite_endpoint_singularity():
    result = integrate_finite(lambda x: x ** -0.5, 0.0, 1.0)
    assert result.value == pytest.approx(2.0, abs=1e-9)


def test_endpoint_distances_keep_right_singularity_accurate():
    def f(x, dl, dr):
        return dr ** -0.5

    result = integrate_finite(f, 0.0, 1.0, endpoint_distances=True)
    assert result.value == pytest.approx(2.0, abs=1e-9)


def test_empty_interval_is_zero():
    result = integrate_finite(np.exp, 1.0, 1.0)
    assert result.value == 0.0
    assert result.evaluations == 0


def test_finite_rejects_reversed_interval():
    with pytest.raises(ValueError):
        integrate_finite(np.exp, 1.0, 0.0)


def test_semi_infinite_exponential():
    result = integrate_semi_infinite(lambda x: np.exp(-x))
    assert result.value == pytest.approx(1.0, abs=1e-10)


def test_semi_infinite_algebraic_decay():
    result = integrate_semi_infinite(lambda x: 1.0 / (1.0 + x * x))
    assert result.value == pytest.approx(np.pi / 2, rel=1e-8)


def test_semi_infinite_lower_bound():
    result = integrate_semi_infinite(lambda x: np.exp(-x), lower=1.0)
    assert result.value == pytest.approx(np.exp(-1.0), rel=1e-10)


def test_batch_integrand_refines_all_problems():
    rates = np.array([1.0, 2.0, 3.0])
    result = integrate_semi_infinite_batch(lambda x: np.exp(-x[:, None] * rates[None, :]))
    assert isinstance(result, BatchIntegralResult)
    assert result.all_converged
    np.testing.assert_allclose(result.values, 1.0 / rates, rtol=1e-10)


def test_finite_batch_shape():
    powers = np.array([0.0, 1.0, 2.0])
    result = integrate_finite_batch(lambda x: x[:, None] ** powers[None, :], 0.0, 1.0)
    np.testing.assert_allclose(result.values, 1.0 / (powers + 1.0), rtol=1e-12)


def test_non_finite_integrand_reports_node():
    with pytest.raises(IntegrandNaNError) as info:
        integrate_finite(lambda x: np.where(x > 0.5, np.nan, 1.0), 0.0, 1.0)
    assert info.value.x > 0.5


def test_require_converged_raises_on_clear_failure():
    cfg = QuadratureConfig(abs_tol=1e-10, rel_tol=1e-10)
    bad = BatchIntegralResult(
        values=np.array([1.0]), errors=np.array([1e-3]), evaluations=10, converged=np.array([False])
    )
    with pytest.raises(QuadratureError) as info:
        require_converged(bad, cfg, "unit")
    assert info.value.result is bad


def test_require_converged_tolerates_small_shortfall():
    cfg = QuadratureConfig(abs_tol=1e-10, rel_tol=1e-10)
    near = BatchIntegralResult(
        values=np.array([1.0]), errors=np.array([5e-10]), evaluations=10, converged=np.array([False])
    )
    np.testing.assert_array_equal(require_converged(near, cfg, "unit"), [1.0])


@pytest.mark.parametrize(
    "kwargs",
    [
        {"abs_tol": -1.0},
        {"abs_tol": 0.0, "rel_tol": 0.0},
        {"max_refinements": 0},
        {"min_refinements": 20},
        {"max_evaluations": 0},
    ],
)
def test_config_validation(kwargs):
    with pytest.raises(ValueError):
        QuadratureConfig(**kwargs)


def test_config_scaled():
    cfg = QuadratureConfig(abs_tol=1e-8, rel_tol=1e-6).scaled(0.5)
    assert cfg.abs_tol == pytest.approx(5e-9)
    assert cfg.rel_tol == pytest.approx(5e-7)


def test_compensated_sum_recovers_lost_unit():
    acc = CompensatedSum()
    for term in (1e16, 1.0, -1e16):
        acc.add(term)
    assert float(acc.value) == 1.0


def test_sum_series_exponential():
    result = sum_series(lambda k: 1.0 / math.factorial(k))
    assert result.converged
    assert result.value == pytest.approx(math.e, rel=1e-15)
    assert result.max_term == 1.0


def test_sum_series_geometric_alternating():
    result = sum_series(lambda k: (-0.5) ** k)
    assert result.value == pytest.approx(2.0 / 3.0, rel=1e-14)


def test_sum_series_handles_zero_terms():
    # sin(pi k / 2) vanishes at even k
    result = sum_series(lambda k: np.sin(np.pi * k / 2) / math.factorial(k) if k % 2 else 0.0, start=0)
    assert result.value == pytest.approx(np.sin(1.0), rel=1e-14)


def test_sum_series_batch():
    xs = np.array([-1.0, 0.5, 2.0])
    result = sum_series(lambda k: xs ** k / math.factorial(k))
    assert isinstance(result, BatchIntegralResult)
    np.testing.assert_allclose(result.values, np.exp(xs), rtol=1e-14)


def test_sum_series_overflow():
    with pytest.raises(SeriesOverflowError) as info:
        sum_series(lambda k: np.inf if k == 5 else 1.0 / (k + 1) ** 2)
    assert info.value.index == 5


def test_sum_series_budget_exhausted():
    cfg = QuadratureConfig(abs_tol=1e-16, rel_tol=1e-15, max_evaluations=20)
    result = sum_series(lambda k: 1.0 / (k + 1), cfg)
    assert not result.converged
    assert result.evaluations == 20


def test_semi_infinite_reference_values():
    assert integrate_semi_infinite(lambda u: np.exp(-u)).value == pytest.approx(1.0, abs=1e-12)
    assert integrate_semi_infinite(lambda u: u ** -0.5 * np.exp(-u)).value == pytest.approx(
        math.sqrt(math.pi), abs=1e-10
    )
    assert integrate_semi_infinite(lambda u: np.exp(-u * u)).value == pytest.approx(
        math.sqrt(math.pi) / 2, abs=1e-10
    )


def test_finite_reference_values():
    assert integrate_finite(lambda u: np.ones_like(u), 0.0, 1.0).value == pytest.approx(1.0, abs=1e-12)
    assert integrate_finite(lambda u: u, 0.0, 2.0).value == pytest.approx(2.0, abs=1e-12)


def test_arcsine_integral_with_endpoint_distances():
    result = integrate_finite(lambda u, dl, dr: dl ** -0.5 * dr ** -0.5, 0.0, 1.0, endpoint_distances=True)
    assert result.value == pytest.approx(math.pi, abs=1e-10)


def test_arcsine_integral_plain_nodes_stay_inside():
    # nodes rounding onto b = 1 would make the integrand infinite
    result = integrate_finite(lambda u: u ** -0.5 * (1.0 - u) ** -0.5, 0.0, 1.0)
    assert np.isfinite(result.value)
    assert result.value == pytest.approx(math.pi, abs=1e-6)


def test_shifted_interval_singular_at_both_ends():
    result = integrate_finite(lambda u: (u - 2.0) ** -0.5 * (3.0 - u) ** -0.5, 2.0, 3.0)
    assert result.value == pytest.approx(math.pi, abs=1e-6)


@pytest.mark.parametrize("c", [-1.0, 2.0, 10.0])
def test_linearity(c):
    def f(u):
        return np.exp(-u) * np.cos(u)

    finite = integrate_finite(f, 0.0, 2.0).value
    assert integrate_finite(lambda u: c * f(u), 0.0, 2.0).value == pytest.approx(c * finite, rel=1e-10)
    semi = integrate_semi_infinite(f).value
    assert integrate_semi_infinite(lambda u: c * f(u)).value == pytest.approx(c * semi, rel=1e-10)


def test_interval_additivity():
    def f(u):
        return np.exp(-u) * u ** 1.5

    whole = integrate_finite(f, 0.0, 3.0).value
    parts = integrate_finite(f, 0.0, 1.2).value + integrate_finite(f, 1.2, 3.0).value
    assert parts == pytest.approx(whole, rel=1e-10)
    tail = integrate_semi_infinite(f, lower=3.0).value
    assert whole + tail == pytest.approx(math.gamma(2.5), rel=1e-9)


def test_sum_series_equals_direct_partial_sum():
    terms = [(-1.0) ** k / (k + 1) ** 2 for k in range(25)]
    result = sum_series(lambda k: terms[k] if k < len(terms) else 0.0)
    assert result.converged
    assert result.value == pytest.approx(math.fsum(terms), rel=1e-15)


def test_sum_series_reference_values():
    assert sum_series(lambda k: 0.5 ** k).value == pytest.approx(2.0, rel=1e-14)
    assert sum_series(lambda k: (-1.0) ** k / math.factorial(k)).value == pytest.approx(math.exp(-1.0), rel=1e-14)
    result = sum_series(lambda k: float(rgamma(k / 2 + 1)))
    assert result.value == pytest.approx(math.e * erfc(-1.0), rel=1e-14)
    assert result.value == pytest.approx(5.00898008, abs=1e-8)

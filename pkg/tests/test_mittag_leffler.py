import mpmath
import numpy as np
import pytest
from scipy.special import erfcx, gamma as gamma_fn

from mittag_engine import (
    DomainError,
    MLParams,
    RatePair,
    SeriesCancellationError,
    ml_laplace_closed,
    ml_laplace_numeric,
    ml_one,
    ml_series,
    ml_series_result,
    ml_two,
)

EXP_GRID = 0.5 * np.arange(41)
ERFC_GRID = 0.25 * np.arange(21)


@pytest.mark.parametrize("x", EXP_GRID)
def test_alpha_one_is_exponential(x):
    assert abs(ml_one(1.0, -x) - np.exp(-x)) <= 1e-12


@pytest.mark.parametrize("x", ERFC_GRID)
def test_alpha_half_is_scaled_erfc(x):
    assert abs(ml_one(0.5, -x) - erfcx(x)) <= 1e-9


def test_known_value():
    assert ml_series(MLParams(0.5, 1.0, 1.0), -1.0) == pytest.approx(0.4275835762, abs=1e-10)


@pytest.mark.parametrize("x", [-2.0, 1.5])
def test_two_parameter_closed_form(x):
    assert ml_two(1.0, 2.0, x) == pytest.approx(np.expm1(x) / x, rel=1e-13)


@pytest.mark.parametrize("beta", [0.5, 1.0, 2.5])
def test_zero_argument(beta):
    assert ml_series(MLParams(0.7, beta, 1.3), 0.0) == pytest.approx(1.0 / gamma_fn(beta), rel=1e-15)


def test_gamma_one_reduces_to_two_parameter():
    three = ml_series(MLParams(0.6, 1.4, 1.0), -2.0)
    assert three == ml_two(0.6, 1.4, -2.0)


def test_three_parameter_against_high_precision(prabhakar):
    value = ml_series(MLParams(0.5, 1.2, 1.5), -1.0)
    assert value == pytest.approx(prabhakar(0.5, 1.2, 1.5, -1.0), rel=1e-12)


@pytest.mark.parametrize("x", [-3.0, 2.0])
def test_alpha_one_is_confluent_hypergeometric(x):
    expected = float(mpmath.hyp1f1(1.5, 1.2, x) / mpmath.gamma(1.2))
    assert ml_series(MLParams(1.0, 1.2, 1.5), x) == pytest.approx(expected, rel=1e-10)


def test_large_cancellation_uses_extended_precision():
    result = ml_series_result(MLParams(0.5, 1.0, 1.0), -10.0)
    assert result.max_term > 1e3
    assert result.value == pytest.approx(erfcx(10.0), rel=1e-12)


def test_alpha_zero_is_geometric():
    assert ml_series(MLParams(0.0, 1.0, 1.0), -0.5) == pytest.approx(1.0 / 1.5, rel=1e-14)


def test_alpha_zero_outside_disc():
    with pytest.raises(DomainError):
        ml_series(MLParams(0.0, 1.0, 1.0), -1.0)


def test_series_refuses_beyond_limit():
    with pytest.raises(SeriesCancellationError) as info:
        ml_series(MLParams(0.5, 1.0, 1.0), -60.0)
    assert "pollard" in str(info.value)
    assert info.value.max_term == float("inf")


@pytest.mark.parametrize(
    "kwargs", [{"alpha": -0.1, "beta": 1.0}, {"alpha": 0.5, "beta": 0.0}, {"alpha": 0.5, "beta": 1.0, "gamma": 0.0}]
)
def test_params_validation(kwargs):
    with pytest.raises(DomainError):
        MLParams(**kwargs)


def test_regime():
    assert MLParams(0.5, 1.2, 1.5).regime == "complete_monotone"
    assert MLParams(0.5, 0.7, 1.5).regime == "series"
    assert MLParams(1.0, 1.0, 1.0).regime == "series"


def test_laplace_closed_form():
    p = MLParams(0.5, 1.0, 1.0)
    assert ml_laplace_closed(p, RatePair(1.0, 4.0)) == pytest.approx(0.5 / 3.0, rel=1e-15)


def test_laplace_closed_rejects_non_positive_s():
    with pytest.raises(DomainError):
        ml_laplace_closed(MLParams(0.5, 1.0, 1.0), RatePair(1.0, 0.0))


@pytest.mark.parametrize("params", [MLParams(0.5, 1.0, 1.0), MLParams(0.5, 1.2, 1.5)])
@pytest.mark.parametrize("s", [1.0, 2.0, 4.0])
def test_laplace_numeric_matches_closed_form(params, s):
    numeric = ml_laplace_numeric(params, 1.0, s).value
    assert numeric == pytest.approx(ml_laplace_closed(params, RatePair(1.0, s)), abs=1e-6)


def test_positive_argument_known_value():
    value = ml_series(MLParams(0.5, 1.0, 1.0), 1.0)
    assert value == pytest.approx(erfcx(-1.0), rel=1e-13)
    assert value == pytest.approx(5.00898008, abs=1e-8)


def test_unreachable_peak_is_cancellation():
    # for alpha = 0.1 the terms at x = -5 keep growing far beyond the scan
    with pytest.raises(SeriesCancellationError) as info:
        ml_series(MLParams(0.1, 1.0, 1.0), -5.0)
    assert info.value.log10_max_term > 900

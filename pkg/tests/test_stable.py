import numpy as np
import pytest
from scipy.special import erfc

from mittag_engine import (
    DomainError,
    ScaledStable,
    StableIndex,
    TiltParams,
    stable_cdf,
    stable_cdf_scaled,
    stable_density,
    stable_density_scaled,
    stable_laplace,
    stable_support_floor,
    tilted_stable_density,
)
from numerics import integrate_semi_infinite

LEVY_POINTS = [0.1, 0.25, 0.5, 1.0, 2.0, 3.0, 5.0]


@pytest.mark.parametrize("x", LEVY_POINTS)
def test_density_matches_levy(levy, x):
    assert stable_density(0.5, x) == pytest.approx(float(levy(x)), abs=1e-10)


def test_density_known_value():
    assert stable_density(StableIndex(0.5), 1.0) == pytest.approx(0.21969564, abs=1e-8)


def test_density_vectorised(levy):
    xs = np.array(LEVY_POINTS)
    np.testing.assert_allclose(stable_density(0.5, xs), levy(xs), atol=1e-10)


@pytest.mark.parametrize("alpha", [0.3, 0.5, 0.7])
@pytest.mark.parametrize("x", [0.8, 1.5, 4.0])
def test_series_and_integral_agree(alpha, x):
    series = stable_density(alpha, x, method="series")
    integral = stable_density(alpha, x, method="integral")
    assert series == pytest.approx(integral, abs=1e-9)


def test_verify_methods_passes_when_consistent():
    assert stable_density(0.5, 1.0, verify_methods=True) == pytest.approx(0.21969564, abs=1e-8)


def test_density_vanishes_near_zero():
    floor = stable_support_floor(0.5)
    assert floor > 0
    assert stable_density(0.5, floor / 2) == 0.0
    assert stable_density(0.5, 1e-3) < 1e-100


@pytest.mark.parametrize("x", [0.0, -1.0])
def test_density_rejects_non_positive(x):
    with pytest.raises(DomainError):
        stable_density(0.5, x)


@pytest.mark.parametrize("alpha", [0.0, 1.0, 1.5])
def test_stable_index_range(alpha):
    with pytest.raises(DomainError):
        StableIndex(alpha)


def test_unknown_method():
    with pytest.raises(DomainError):
        stable_density(0.5, 1.0, method="fourier")


@pytest.mark.parametrize("x", [0.1, 0.5, 1.0, 2.0, 5.0])
def test_cdf_matches_levy(x):
    assert stable_cdf(0.5, x) == pytest.approx(erfc(1.0 / (2.0 * np.sqrt(x))), abs=1e-9)


def test_cdf_known_value():
    assert stable_cdf(0.5, 1.0) == pytest.approx(0.4795001222, abs=1e-9)


def test_cdf_routes_agree():
    xs = np.array([0.3, 1.0, 3.0])
    np.testing.assert_allclose(
        stable_cdf(0.3, xs, method="density"), stable_cdf(0.3, xs, method="zolotarev"), atol=1e-9
    )


def test_cdf_monotone_and_bounded():
    xs = np.linspace(0.05, 20.0, 60)
    values = stable_cdf(0.3, xs)
    assert np.all(np.diff(values) >= -1e-12)
    assert np.all((values >= 0.0) & (values <= 1.0))
    assert stable_cdf(0.3, 0.0) == 0.0
    assert 1.0 - stable_cdf(0.7, 1e8) < 1e-5


@pytest.mark.parametrize("alpha", [0.3, 0.5, 0.7])
@pytest.mark.parametrize("s", [0.5, 1.0, 2.0])
def test_laplace_identity(alpha, s):
    assert stable_laplace(alpha, s) == pytest.approx(np.exp(-s ** alpha), rel=1e-6)


@pytest.mark.parametrize("t", [0.5, 2.0])
def test_scaled_laplace_identity(t):
    assert stable_laplace(0.5, 1.0, t) == pytest.approx(np.exp(-t), rel=1e-6)


def test_scaled_density_closed_form(levy):
    value = stable_density_scaled(ScaledStable(0.5, 4.0), 2.0)
    assert value == pytest.approx(float(levy(0.125)) / 16.0, rel=1e-9)


def test_scaled_unit_time_is_plain_density():
    xs = np.array([0.5, 1.0, 2.0])
    np.testing.assert_array_equal(stable_density_scaled(ScaledStable(0.7, 1.0), xs), stable_density(0.7, xs))


def test_scaled_density_normalised():
    s = ScaledStable(0.7, 2.5)
    total = integrate_semi_infinite(lambda x: stable_density_scaled(s, x)).value
    assert total == pytest.approx(1.0, abs=1e-7)


def test_scaled_cdf():
    s = ScaledStable(0.5, 2.0)
    # F(x | t) = F(x t^-2) for alpha = 1/2
    assert stable_cdf_scaled(s, 4.0) == pytest.approx(stable_cdf(0.5, 1.0), abs=1e-12)


def test_tilted_zero_tilt_is_scaled_density():
    xs = np.array([0.5, 1.0, 3.0])
    np.testing.assert_allclose(
        tilted_stable_density(TiltParams(0.5, 0.0), xs, 2.0),
        stable_density_scaled(ScaledStable(0.5, 2.0), xs),
        rtol=1e-14,
    )


@pytest.mark.parametrize("theta", [0.5, -0.25])
def test_tilted_density_normalised(theta):
    tp = TiltParams(0.5, theta)
    total = integrate_semi_infinite(lambda x: tilted_stable_density(tp, x, 1.0)).value
    assert total == pytest.approx(1.0, abs=1e-7)


def test_tilt_lower_bound():
    with pytest.raises(DomainError):
        TiltParams(0.5, -0.5)


def test_cdf_domain():
    assert stable_cdf(0.5, 0.0) == 0.0
    with pytest.raises(DomainError):
        stable_cdf(0.5, -1e-3)

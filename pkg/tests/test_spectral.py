import numpy as np
import pytest
from scipy.special import erfcx

from mittag_engine import (
    DomainError,
    MLParams,
    PollardParams,
    SpectralPoint,
    StableIndex,
    ml_series,
    ml_via_spectral,
    spectral_density_r,
    spectral_density_r1,
    spectral_density_r_values,
    spectral_density_s,
    spectral_laplace_s,
    spectral_mass,
    spectral_sign_scan,
)

U_GRID = np.logspace(-3, 3, 61)


@pytest.mark.parametrize("alpha", [0.3, 0.5, 0.7])
@pytest.mark.parametrize("lambda_", [0.5, 2.0])
def test_general_density_reduces_to_one_parameter(alpha, lambda_):
    general = spectral_density_r_values(MLParams(alpha, 1.0, 1.0), lambda_, U_GRID)
    np.testing.assert_allclose(general, spectral_density_r1(alpha, lambda_, U_GRID), rtol=1e-12, atol=1e-300)


def test_spectral_point():
    pt = SpectralPoint(u=2.0, lambda_=1.0, params=MLParams(0.5, 1.0, 1.0))
    assert spectral_density_r(pt) == pytest.approx(spectral_density_r1(0.5, 1.0, 2.0), rel=1e-12)


def test_spectral_point_validation():
    with pytest.raises(DomainError):
        SpectralPoint(u=0.0, lambda_=1.0, params=MLParams(0.5, 1.0, 1.0))
    with pytest.raises(DomainError):
        SpectralPoint(u=1.0, lambda_=1.0, params=MLParams(1.0, 1.0, 1.0))


@pytest.mark.parametrize("alpha", [0.3, 0.5, 0.7])
def test_one_parameter_mass(alpha):
    assert spectral_mass(alpha, 1.0) == pytest.approx(1.0, abs=1e-8)


def test_spectral_route_half():
    assert ml_via_spectral(MLParams(0.5, 1.0, 1.0), 1.0, 1.0) == pytest.approx(erfcx(1.0), abs=1e-8)


def test_spectral_route_at_zero():
    assert ml_via_spectral(MLParams(0.5, 1.2, 1.5), 1.0, 0.0) == pytest.approx(1.0 / 0.9181687424, rel=1e-9)


def test_spectral_route_three_parameter():
    params = MLParams(0.5, 1.2, 1.5)
    xs = np.array([0.5, 1.0, 2.0])
    expected = [ml_series(params, -x ** 0.5) for x in xs]
    np.testing.assert_allclose(ml_via_spectral(params, 1.0, xs), expected, atol=1e-6)


def test_spectral_route_needs_integrable_origin():
    with pytest.raises(DomainError):
        ml_via_spectral(MLParams(0.5, 1.5, 1.0), 1.0, 1.0)


def test_spectral_route_rejects_negative_x():
    with pytest.raises(DomainError):
        ml_via_spectral(MLParams(0.5, 1.0, 1.0), 1.0, -0.5)


def test_s_density_known_value():
    # alpha = 1/2, beta = gamma = 1, t = 1, u = 1: cos(1) / pi
    value = spectral_density_s(MLParams(0.5, 1.0, 1.0), 1.0, 1.0)
    assert value == pytest.approx(np.cos(1.0) / np.pi, rel=1e-13)


def test_s_laplace_reproduces_kernel():
    value = spectral_laplace_s(MLParams(0.5, 1.0, 1.0), 1.0, 1.0)
    assert value == pytest.approx(0.43939128, abs=1e-8)


@pytest.mark.parametrize("shape", [(0.5, 1.0, 1.0), (0.7, 1.0, 1.0), (0.5, 0.9, 1.5)])
def test_density_nonnegative_for_beta_at_most_one(shape):
    minimum, negative = spectral_sign_scan(MLParams(*shape), 1.0, U_GRID)
    assert negative == []
    assert minimum >= 0.0


def test_density_has_negative_tail_beyond_one():
    minimum, negative = spectral_sign_scan(MLParams(0.5, 1.5, 1.0), 1.0, U_GRID)
    assert minimum < 0.0
    assert negative
    # tail ~ sin(pi beta) u^(-beta) / pi
    u, v = negative[-1]
    assert v == pytest.approx(-(u ** -1.5) / np.pi, rel=0.1)


def test_sign_scan_rejects_non_positive_grid():
    with pytest.raises(DomainError):
        spectral_sign_scan(MLParams(0.5, 1.0, 1.0), 1.0, [0.0, 1.0])


def test_one_parameter_density_rate_scaling():
    # u -> lambda^(1/alpha) u maps rate 1 onto rate lambda
    v = np.logspace(-2, 2, 9)
    scaled = spectral_density_r1(0.5, 2.0, 4.0 * v)
    np.testing.assert_allclose(scaled, spectral_density_r1(0.5, 1.0, v) / 4.0, rtol=1e-12)


def test_pollard_params_accepted():
    p = PollardParams(StableIndex(0.5), 1.2, 1.5)
    np.testing.assert_array_equal(
        spectral_density_r_values(p, 1.0, U_GRID), spectral_density_r_values(MLParams(0.5, 1.2, 1.5), 1.0, U_GRID)
    )
    assert SpectralPoint(u=1.0, lambda_=1.0, params=MLParams(0.5, 1.2, 1.5)).params == p


@pytest.mark.parametrize("shape", [(0.5, 0.75, 1.5), (0.5, 0.5, 1.5)])
def test_kernel_condition_enforced(shape):
    with pytest.raises(DomainError):
        spectral_density_s(MLParams(*shape), 1.0, 1.0)
    with pytest.raises(DomainError):
        ml_via_spectral(MLParams(*shape), 1.0, 1.0)
    with pytest.raises(DomainError):
        SpectralPoint(u=1.0, lambda_=1.0, params=MLParams(*shape))

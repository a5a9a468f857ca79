"""
Numerical engines for MLCM.
Double-exponential quadrature on finite and semi-infinite intervals and
compensated series summation.
"""

from numerics.config import DEFAULT_CONFIG, BatchIntegralResult, IntegralResult, QuadratureConfig
from numerics.errors import (
    ConvergenceError,
    IntegrandNaNError,
    NumericsError,
    QuadratureError,
    SeriesDivergenceError,
    SeriesOverflowError,
)
from numerics.quadrature import (
    integrate_finite,
    integrate_finite_batch,
    integrate_semi_infinite,
    integrate_semi_infinite_batch,
    require_converged,
)
from numerics.series import SERIES_CONFIG, CompensatedSum, sum_series

__all__ = [
    "DEFAULT_CONFIG",
    "SERIES_CONFIG",
    "QuadratureConfig",
    "IntegralResult",
    "BatchIntegralResult",
    "NumericsError",
    "IntegrandNaNError",
    "ConvergenceError",
    "QuadratureError",
    "SeriesDivergenceError",
    "SeriesOverflowError",
    "integrate_finite",
    "integrate_finite_batch",
    "integrate_semi_infinite",
    "integrate_semi_infinite_batch",
    "require_converged",
    "CompensatedSum",
    "sum_series",
]

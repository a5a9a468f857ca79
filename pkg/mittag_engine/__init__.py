"""
Mittag-Leffler engine for MLCM.
Stable densities, the Prabhakar series, Pollard-type integral representations
and Stieltjes spectral densities of E^gamma_{alpha,beta}.
"""

from mittag_engine.errors import (
    DegenerateKernelError,
    DomainError,
    MethodDisagreementError,
    SeriesCancellationError,
)
from mittag_engine.mittag_leffler import (
    ml_laplace_closed,
    ml_laplace_numeric,
    ml_one,
    ml_series,
    ml_series_result,
    ml_two,
)
from mittag_engine.params import (
    GammaPrior,
    MLParams,
    PollardParams,
    RatePair,
    ScaledStable,
    SpectralPoint,
    StableIndex,
    TiltParams,
)
from mittag_engine.pollard import (
    conv_kernel_w,
    evaluate_ml,
    feller_bivariate_laplace,
    feller_mixture,
    limit_target,
    marginal_density,
    marginal_density_closed,
    ml_via_limit,
    ml_via_limit_sequence,
    ml_via_pollard,
    pollard_cdf,
    pollard_density,
    pollard_total_mass,
    rho_density,
    stable_convolution,
    stable_marginal_cdf,
    stable_marginal_density,
    tilted_h,
    tilted_pollard_cdf,
    tilted_pollard_density,
)
from mittag_engine.spectral import (
    ml_via_spectral,
    spectral_density_r,
    spectral_density_r1,
    spectral_density_r_values,
    spectral_density_s,
    spectral_laplace_s,
    spectral_mass,
    spectral_sign_scan,
)
from mittag_engine.stable import (
    stable_cdf,
    stable_cdf_scaled,
    stable_density,
    stable_density_scaled,
    stable_laplace,
    stable_support_floor,
    tilted_stable_density,
)

__all__ = [
    "DomainError",
    "DegenerateKernelError",
    "MethodDisagreementError",
    "SeriesCancellationError",
    "StableIndex",
    "ScaledStable",
    "TiltParams",
    "MLParams",
    "RatePair",
    "GammaPrior",
    "PollardParams",
    "SpectralPoint",
    "stable_density",
    "stable_cdf",
    "stable_density_scaled",
    "stable_cdf_scaled",
    "tilted_stable_density",
    "stable_support_floor",
    "stable_laplace",
    "ml_series",
    "ml_series_result",
    "ml_one",
    "ml_two",
    "ml_laplace_closed",
    "ml_laplace_numeric",
    "rho_density",
    "stable_convolution",
    "conv_kernel_w",
    "pollard_density",
    "pollard_cdf",
    "pollard_total_mass",
    "marginal_density",
    "marginal_density_closed",
    "stable_marginal_density",
    "stable_marginal_cdf",
    "ml_via_limit",
    "ml_via_limit_sequence",
    "limit_target",
    "ml_via_pollard",
    "feller_mixture",
    "feller_bivariate_laplace",
    "tilted_h",
    "tilted_pollard_density",
    "tilted_pollard_cdf",
    "evaluate_ml",
    "spectral_density_r",
    "spectral_density_r_values",
    "spectral_density_r1",
    "spectral_density_s",
    "spectral_laplace_s",
    "spectral_mass",
    "ml_via_spectral",
    "spectral_sign_scan",
]

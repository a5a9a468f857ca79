# mittag_engine/params.py

"""Validated parameter records for the stable, Mittag-Leffler and Pollard families."""

from dataclasses import dataclass
from typing import Union

from mittag_engine.errors import DegenerateKernelError, DomainError

# |beta - alpha*gamma| below this is treated as the degenerate kernel.
DEGENERACY_TOL = 1e-14


@dataclass(frozen=True)
class StableIndex:
    alpha: float

    def __post_init__(self):
        if not 0.0 < self.alpha < 1.0:
            raise DomainError(f"stable index must satisfy 0 < alpha < 1, got {self.alpha}")


def as_stable_index(value: Union["StableIndex", float]) -> StableIndex:
    """Accept either a StableIndex or a bare float."""
    if isinstance(value, StableIndex):
        return value
    return StableIndex(float(value))


@dataclass(frozen=True)
class ScaledStable:
    """Stable law of index alpha at time t (Laplace transform exp(-t s^alpha))."""

    alpha: StableIndex
    t: float

    def __post_init__(self):
        object.__setattr__(self, "alpha", as_stable_index(self.alpha))
        if not self.t > 0:
            raise DomainError(f"time scale t must be positive, got {self.t}")


@dataclass(frozen=True)
class TiltParams:
    """Polynomially tilted stable law; theta > -alpha."""

    alpha: StableIndex
    theta: float

    def __post_init__(self):
        object.__setattr__(self, "alpha", as_stable_index(self.alpha))
        if not self.theta > -self.alpha.alpha:
            raise DomainError(f"tilt theta must exceed -alpha, got {self.theta}")


@dataclass(frozen=True)
class MLParams:
    """Parameters (alpha, beta, gamma) of E^gamma_{alpha,beta}.

    alpha = 0 is admitted for the series (E_0(z) = 1/(1 - z), |z| < 1).
    """

    alpha: float
    beta: float
    gamma: float = 1.0

    def __post_init__(self):
        if not self.alpha >= 0:
            raise DomainError(f"alpha must be >= 0, got {self.alpha}")
        if not self.beta > 0:
            raise DomainError(f"beta must be positive, got {self.beta}")
        if not self.gamma > 0:
            raise DomainError(f"gamma must be positive, got {self.gamma}")

    @property
    def regime(self) -> str:
        """'complete_monotone' when 0 < alpha < 1 and beta > alpha*gamma, else 'series'."""
        if 0.0 < self.alpha < 1.0 and self.beta > self.alpha * self.gamma:
            return "complete_monotone"
        return "series"


@dataclass(frozen=True)
class RatePair:
    lambda_: float
    s: float

    def __post_init__(self):
        if not self.lambda_ > 0:
            raise DomainError(f"rate lambda must be positive, got {self.lambda_}")


@dataclass(frozen=True)
class GammaPrior:
    """Gamma(mu, lambda) mixing law for the stable time scale."""

    mu: float
    lambda_: float

    def __post_init__(self):
        if not self.mu > 0:
            raise DomainError(f"shape mu must be positive, got {self.mu}")
        if not self.lambda_ > 0:
            raise DomainError(f"rate lambda must be positive, got {self.lambda_}")


@dataclass(frozen=True)
class PollardParams:
    """Generalised Pollard family; requires beta > alpha*gamma."""

    alpha: StableIndex
    beta: float
    gamma: float

    def __post_init__(self):
        object.__setattr__(self, "alpha", as_stable_index(self.alpha))
        if not self.gamma > 0:
            raise DomainError(f"gamma must be positive, got {self.gamma}")
        c = self.beta - self.alpha.alpha * self.gamma
        if abs(c) <= DEGENERACY_TOL:
            raise DegenerateKernelError(
                f"beta = alpha*gamma = {self.beta}: the power kernel degenerates"
            )
        if c < 0:
            raise DomainError(
                f"Pollard family needs beta > alpha*gamma, got beta={self.beta}, "
                f"alpha*gamma={self.alpha.alpha * self.gamma}"
            )

    @property
    def kernel_exponent(self) -> float:
        return self.beta - self.alpha.alpha * self.gamma

    def ml_params(self) -> MLParams:
        return MLParams(self.alpha.alpha, self.beta, self.gamma)

    @classmethod
    def from_ml(cls, params: MLParams) -> "PollardParams":
        return cls(StableIndex(params.alpha), params.beta, params.gamma)


@dataclass(frozen=True)
class SpectralPoint:
    """Spectral abscissa u with its rate; `params` is stored as the Pollard family."""

    u: float
    lambda_: float
    params: Union[PollardParams, MLParams]

    def __post_init__(self):
        if not self.u > 0:
            raise DomainError(f"spectral variable u must be positive, got {self.u}")
        if not self.lambda_ > 0:
            raise DomainError(f"rate lambda must be positive, got {self.lambda_}")
        if isinstance(self.params, MLParams):
            object.__setattr__(self, "params", PollardParams.from_ml(self.params))

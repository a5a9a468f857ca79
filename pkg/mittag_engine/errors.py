# mittag_engine/errors.py

from typing import Optional

from numerics.errors import ConvergenceError, NumericsError


class DomainError(NumericsError, ValueError):
    """An argument or parameter lies outside the admissible domain."""


class DegenerateKernelError(DomainError):
    """beta == alpha * gamma: the power kernel rho collapses to a point mass."""


class SeriesCancellationError(ConvergenceError):
    """The power series would lose too many digits to cancellation.

    `max_term` is the largest intermediate term magnitude (possibly as a
    base-10 exponent when it does not fit a float, see `log10_max_term`).
    """

    def __init__(self, message: str, log10_max_term: float, result=None):
        self.log10_max_term = log10_max_term
        self.max_term = 10.0 ** log10_max_term if log10_max_term < 308 else float("inf")
        super().__init__(
            f"{message} (largest term ~1e{log10_max_term:.0f}); "
            "use the Pollard route (method='pollard') for this argument",
            result,
        )


class MethodDisagreementError(NumericsError):
    """Two evaluation methods that must agree did not."""

    def __init__(self, message: str, discrepancy: Optional[float] = None):
        self.discrepancy = discrepancy
        super().__init__(message)

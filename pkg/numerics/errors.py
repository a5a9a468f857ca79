# numerics/errors.py

"""Exception hierarchy shared by the quadrature and series engines."""

from typing import Optional


class NumericsError(Exception):
    """Base class for every numerical failure raised by this project."""


class IntegrandNaNError(NumericsError):
    """The integrand returned NaN or inf at a quadrature node."""

    def __init__(self, x: float, message: Optional[str] = None):
        self.x = x
        super().__init__(message or f"integrand is not finite at x={x!r}")


class ConvergenceError(NumericsError):
    """A computation stopped before meeting its tolerance.

    The best available estimate travels with the exception in `result`.
    """

    def __init__(self, message: str, result=None):
        self.result = result
        super().__init__(message)


class QuadratureError(ConvergenceError):
    """Top-level quadrature did not converge."""


class SeriesDivergenceError(ConvergenceError):
    """Series summation exhausted its term budget."""


class SeriesOverflowError(NumericsError):
    """A series term overflowed double precision."""

    def __init__(self, index: int, message: Optional[str] = None):
        self.index = index
        super().__init__(message or f"series term {index} is not finite")

"""Exception hierarchy shared by the library and the CLI."""


class MirrorError(Exception):
    """Base class for all package errors."""


class DomainError(MirrorError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class ConfigError(MirrorError, ValueError):
    """A model or run configuration is malformed."""


class DivergenceError(MirrorError, ArithmeticError):
    """The requested observable is infrared divergent for this mirror."""


class QuadratureError(MirrorError, ArithmeticError):
    """Adaptive quadrature failed to reach the requested tolerance.

    The best available estimate is kept on the exception so callers can
    report it.
    """

    def __init__(self, message, value=float("nan"), err_estimate=float("inf"),
                 subdivisions=0):
        super().__init__(message)
        self.value = value
        self.err_estimate = err_estimate
        self.subdivisions = subdivisions

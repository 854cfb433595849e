"""Exception types shared across the package."""


class SlimexError(Exception):
    """Base class."""


class ConfigError(SlimexError, ValueError):
    """Bad configuration or unknown identifier."""


class DomainError(SlimexError, ValueError):
    """Query or interval lies outside the computational domain."""


class NumericalError(SlimexError, RuntimeError):
    """Blow-up, positivity loss, or similar runtime failure."""


class SolverError(NumericalError):
    """Krylov iteration failed to reach tolerance."""

    def __init__(self, msg, residual=None, iterations=None):
        super().__init__(msg)
        self.residual = residual
        self.iterations = iterations


class BreakdownError(SolverError):
    """CG detected non-positive curvature."""

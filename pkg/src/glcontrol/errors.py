"""Exception types shared across the package."""


class GLControlError(Exception):
    """Base class for all package errors."""


class ConfigurationError(GLControlError):
    """Invalid geometry, grid binding, or config file contents."""


class ParameterError(GLControlError):
    """Weight/penalization parameters outside their admissible range."""


class ConstructionError(GLControlError):
    """A constructed object failed its own certification check."""


class WeightDomainError(GLControlError):
    """Weight evaluated at (or past) its singular time endpoint."""


class DimensionError(GLControlError):
    """Mismatched grids, trees, or field shapes."""


class EllipticityError(GLControlError):
    """Diffusion coefficient dropped below its certified lower bound."""


class DivergenceError(GLControlError):
    """Non-finite values detected during time stepping."""

    def __init__(self, message, step_index=None):
        super().__init__(message)
        self.step_index = step_index


class SaturationError(GLControlError):
    """A log-space weight combination exceeded the floating-point range."""

    def __init__(self, message, max_exponent=None):
        super().__init__(message)
        self.max_exponent = max_exponent


class SizeCapError(GLControlError):
    """Brute-force oracle refused an instance above its size cap."""


class NonConvergenceError(GLControlError):
    """Iteration budget exhausted before the requested tolerance."""

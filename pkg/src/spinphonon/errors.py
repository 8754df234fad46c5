"""Exception types shared across the package."""


class SpinPhononError(Exception):
    """Base class for all package-specific errors."""


class DomainError(SpinPhononError, ValueError):
    """An argument lies outside the physically valid domain."""


class QuadratureError(SpinPhononError, RuntimeError):
    """Quadrature failed to converge to the requested tolerance.

    Carries the best available estimate and the residual between the
    last two refinement levels.
    """

    def __init__(self, message, estimate, residual):
        super().__init__(message)
        self.estimate = estimate
        self.residual = residual


class NumericalError(SpinPhononError, RuntimeError):
    """A numerical routine (eigendecomposition, ...) failed or produced
    results outside its validity guarantees."""


class IntegrationError(SpinPhononError, RuntimeError):
    """Time integration violated a state invariant beyond tolerance.

    ``step_index`` is the integrator step at which the breach was detected.
    """

    def __init__(self, message, step_index):
        super().__init__(message)
        self.step_index = step_index


class ConfigError(SpinPhononError, ValueError):
    """A run configuration file is malformed or inconsistent."""

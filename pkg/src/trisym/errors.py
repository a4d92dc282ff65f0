"""Exception types shared across the package."""


class TrisymError(Exception):
    """Base class for all errors raised by trisym."""


class InvalidArgumentError(TrisymError, ValueError):
    pass


class DegenerateCycleError(TrisymError, ValueError):
    """A cycle whose Gram matrix or Jacobian has lost rank."""


class NumericalFailure(TrisymError, RuntimeError):
    pass


class ConstantPolynomialError(TrisymError):
    """Raised when every point of the sphere is critical.

    Carries the constant value so callers can still report it.
    """

    def __init__(self, value, message=None):
        self.value = value
        super().__init__(message or f"polynomial is constant on the sphere (value {value!r})")


class InconsistencyError(TrisymError, RuntimeError):
    """Two independent tests disagreed beyond tolerance. Always a bug."""


class ConfigError(TrisymError, ValueError):
    pass

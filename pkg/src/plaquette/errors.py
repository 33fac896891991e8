"""Exception and warning types shared across the package."""


class PlaquetteError(Exception):
    """Base class for every error raised by this package."""


class InvalidParameter(PlaquetteError, ValueError):
    """A physical or numerical parameter is outside its allowed range."""


class NonConvergence(PlaquetteError):
    """The fixed-point iteration did not reach the requested residual.

    Usually signals bistability or a bad operating point.  The last
    iterate is attached so callers can inspect where the search stalled.
    """

    def __init__(self, message, last_state=None):
        super().__init__(message)
        self.last_state = last_state


class BasisError(PlaquetteError):
    """Operation applied in the wrong mode basis."""


class EigenFailure(PlaquetteError):
    """The eigenvalue solver failed to converge (pathological input)."""


class SingularMatrix(PlaquetteError):
    """Response matrix numerically singular at the probe frequency."""


class AmbiguousRouting(PlaquetteError):
    """Both routing orientations pass; the thresholds are too loose."""


class ParseError(PlaquetteError, ValueError):
    """Config text is malformed, or required/unknown keys are present."""


class ValidationError(PlaquetteError, ValueError):
    """Config parsed, but a field holds an invalid value."""

    def __init__(self, field, message=None):
        super().__init__(message or f"invalid value for {field!r}")
        self.field = field


class UnstablePoint(PlaquetteError):
    """A sweep grid point produced an unstable dynamics matrix."""

    def __init__(self, index, message=None):
        super().__init__(message or f"unstable system at grid index {index}")
        self.index = index


class RotatingWaveWarning(UserWarning):
    """Linearized model built outside its rotating-wave validity window."""


class RegimeViolationWarning(UserWarning):
    """Parameters are far from the regime a check was designed for."""


class UnitarityWarning(UserWarning):
    """A nominally lossless result does not conserve probability."""

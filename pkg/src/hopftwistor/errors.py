"""Exception types shared across the package."""


class GeometryError(Exception):
    """Base class for all geometric failures."""


class ValidationError(GeometryError):
    """Structural membership failed (group, algebra, Stiefel, form shape).

    Carries the max-norm residual that exceeded the tolerance.
    """

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class InputError(GeometryError):
    """Malformed or inadmissible input: dimension mismatch, non-tangency,
    non-horizontal lift, values leaving the required manifold."""

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class DegenerateCurveError(GeometryError):
    """Curve construction broke down: vanishing horizontal speed, or the
    unit tangent is undefined (sign '+' at radius 0)."""


class ImmersionError(GeometryError):
    """The patch differential is rank deficient, or the construction is the
    documented non-immersion."""


class ExceptionalPairError(GeometryError):
    """Principal-curvature pairing denominator 2*lam - mu vanished; the pair
    belongs to the exceptional case and is reported separately."""


class ConfigError(Exception):
    """Command-line / config-file validation failure (exit status 2)."""

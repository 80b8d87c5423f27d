"""Exception types shared across the package."""


class EllgenusError(Exception):
    """Base class for all package errors."""


class RingMismatchError(EllgenusError):
    """Operands live over incompatible coefficient rings or algebras."""


class TruncationError(EllgenusError):
    """A coefficient at or beyond the truncation order was requested."""


class NonUnitError(EllgenusError):
    """Inversion was attempted on a non-invertible element."""


class SeriesError(EllgenusError):
    """Malformed series construction (bad step, bad factor, bad trunc)."""


class ThetaError(EllgenusError):
    """Invalid theta-function arguments (Im tau <= 0, bad weight, ...)."""


class ModelError(EllgenusError):
    """Fixed-point model fails a structural precondition."""


class PoleError(EllgenusError):
    """Numeric evaluation hit (or came too close to) a theta zero."""


class InterpolationError(EllgenusError):
    """Laurent interpolation problem is ill-conditioned."""


class ContourError(EllgenusError):
    """Zero-counting contour passes too close to a zero or pole."""

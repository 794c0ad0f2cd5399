"""Exception types shared across the package."""


class NestcorrError(Exception):
    """Base class for errors raised by nestcorr."""


class ValidationError(NestcorrError, ValueError):
    """Bad input: wrong sizes, out-of-range parameters and the like."""


class NonDivisible(NestcorrError, ArithmeticError):
    """Exact polynomial division left a nonzero remainder."""


class DivisionByZero(NestcorrError, ZeroDivisionError):
    pass


class LengthMismatch(ValidationError):
    pass


class NotStrict(ValidationError):
    pass


class RepeatedPoint(ValidationError):
    """Evaluation points coincide, so the Vandermonde determinant vanishes."""


class ZeroLimitInvalid(ValidationError):
    pass


class ZeroArgument(ValidationError):
    pass


class InvalidDeviation(ValidationError):
    pass


class Collision(ValidationError):
    """Two walkers (or particles) occupy the same site."""


class SizeMismatch(ValidationError):
    pass


class ModeEnumerationTooLarge(ValidationError):
    pass


class PaletteExhausted(ValidationError):
    pass


class InconsistentNest(ValidationError):
    pass


class RegimeTooSmall(NestcorrError):
    """Fit window too close to the finite-size recurrence scale."""


class IdentityMismatch(NestcorrError):
    """Two routes to the same quantity disagreed.

    Carries both values so callers can print the discrepancy.
    """

    def __init__(self, name, left=None, right=None):
        self.name = name
        self.left = left
        self.right = right
        super().__init__(f"{name}: {left!r} != {right!r}")

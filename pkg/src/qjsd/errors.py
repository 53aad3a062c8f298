"""Exception hierarchy.

Every validation error carries the measured residual that tripped it so the
CLI can report it verbatim.
"""


class QJSDError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(QJSDError, ValueError):
    """An input object violates one of its invariants."""

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class NotHermitian(ValidationError):
    pass


class NotPositive(ValidationError):
    pass


class TraceNotOne(ValidationError):
    pass


class NotNormalized(ValidationError):
    pass


class InvalidDistribution(ValidationError):
    pass


class IncompletePOVM(ValidationError):
    pass


class IncompleteChannel(ValidationError):
    pass


class DomainError(QJSDError, ValueError):
    """A spectral function was asked for a value outside its domain."""


class NoConvergence(QJSDError, RuntimeError):
    """The Jacobi eigensolver ran out of sweeps."""


class DimensionMismatch(QJSDError, ValueError):
    pass


class LengthMismatch(QJSDError, ValueError):
    pass


class ReferenceNotFullRank(QJSDError, ValueError):
    pass


class SupportViolation(QJSDError, ValueError):
    pass

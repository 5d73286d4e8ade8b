"""Exception types shared across the package.

Mathematical *negatives* (an inadmissible action, a non-compliant map, a
statistical violation) are ordinary results carried in report objects, not
exceptions.  Exceptions are reserved for inputs that make an operation
meaningless.
"""


class ResonaxError(Exception):
    """Base class for all errors raised by this package."""


class InvalidInputError(ResonaxError, ValueError):
    """Malformed input: ragged rows, empty matrix, wrong dimensions, bad JSON shape."""


class DimensionMismatchError(InvalidInputError):
    """Two objects that must share a dimension do not."""


class InadmissibleActionError(ResonaxError):
    """An operation that requires an admissible action was given an inadmissible one.

    Carries the certificate so callers can surface the witness monomial.
    """

    def __init__(self, message, certificate=None):
        super().__init__(message)
        self.certificate = certificate


class SizeLimitError(ResonaxError):
    """Input exceeds a documented hard size limit (e.g. Jacobian cofactor expansion)."""


class MissingInverseError(InvalidInputError):
    """A map that must come with an exact inverse did not, or the pair fails to compose to the identity."""


class DegenerateDomainError(ResonaxError):
    """Rejection sampling acceptance ratio fell below the documented floor."""

"""Exception taxonomy shared across the library."""


class CremonaError(Exception):
    """Base class for all library errors."""


class FieldError(CremonaError):
    """Invalid field configuration (non-prime characteristic, reducible modulus, ...)."""


class ShapeError(CremonaError):
    """Matrix or construction has the wrong shape."""


class ArityError(CremonaError):
    """Variable counts or coordinate lengths do not match."""


class BudgetExceeded(CremonaError):
    """A configured budget (pairs, degree, enumeration) ran out.

    ``partial`` may carry partial data, flagged unusable for exact claims.
    """

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class CharZeroUnsupported(CremonaError):
    """Operation requires finite field coefficients."""


class IncompleteBasis(CremonaError):
    """A budget-truncated Groebner basis was used where a complete one is required."""


class DimensionTooLow(CremonaError):
    """Sectional genus asked of a scheme of projective dimension < 1."""


class InsufficientPoints(CremonaError):
    """Interpolation was given fewer points than monomials."""


class BasePoint(CremonaError):
    """Evaluation hit the base locus (all defining forms vanish)."""


class IdentityFailure(CremonaError):
    """Internal consistency guard: the bilinear flip identity failed."""


class ConstructionFailed(CremonaError):
    """A seeded construction exhausted its retry budget."""


class UnknownId(CremonaError):
    """Unknown gallery example id."""


class MalformedSpec(CremonaError):
    """Malformed resolution specification."""


class RangeError(CremonaError):
    """Numeric argument outside the meaningful range."""


class BadPrime(CremonaError):
    """Results disagree across primes, or a prime divides a protected quantity."""


class BadPrimeWarning(UserWarning):
    """The working prime divides an expected quantity; it was bumped."""

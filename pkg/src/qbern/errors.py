"""Exception types raised across the package."""


class QBernError(Exception):
    """Base class for all library errors."""


class DomainUnsupported(QBernError):
    """The requested value is not representable in the active numeric domain."""


class NonIntegerArgument(QBernError, ValueError):
    pass


class DimensionMismatch(QBernError, ValueError):
    pass


class InvalidDegree(QBernError, ValueError):
    pass


class InvalidIndex(QBernError, ValueError):
    pass


class OrderMismatch(QBernError, ValueError):
    pass


class OrderExceeded(QBernError, IndexError):
    pass


class ZeroConstantTerm(QBernError, ZeroDivisionError):
    pass


class DivisionByZero(QBernError, ZeroDivisionError):
    pass


class PoleAtOne(QBernError, ValueError):
    """Raised when some x_i = 1, where [1 - x_i]_q vanishes and the interpolation diverges."""


class NonPositiveInteger(QBernError, ValueError):
    pass


class IdentityViolation(QBernError, AssertionError):
    """Two sides of an identity that must agree did not.

    This signals an implementation bug rather than bad input.
    """

    def __init__(self, name, lhs, rhs):
        super().__init__(f"{name}: {lhs!r} != {rhs!r}")
        self.name = name
        self.lhs = lhs
        self.rhs = rhs

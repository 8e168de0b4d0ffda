"""Exception types shared across the package."""


class CasselmanError(Exception):
    """Base class for all errors raised by this package."""


class UnsupportedType(CasselmanError, ValueError):
    pass


class IndexOutOfRange(CasselmanError, IndexError):
    pass


class MixedRootSystems(CasselmanError, ValueError):
    pass


class NotComparable(CasselmanError, ValueError):
    """Raised when an operation needs u <= v in the Bruhat order and it fails."""


class NotSimplyLaced(CasselmanError, ValueError):
    pass


class NoLimit(CasselmanError, ArithmeticError):
    """The z -> infinity limit of a rational function does not exist."""


class BadSample(CasselmanError, ArithmeticError):
    """A modular sample point makes a needed denominator vanish."""

"""Exception types raised across the package."""


class ArbordynError(Exception):
    """Base class for all package errors."""


class PolyParseError(ArbordynError, ValueError):
    pass


class DegreeCapExceeded(ArbordynError):
    pass


class UndefinedReduction(ArbordynError, ValueError):
    pass


class NonIntegral(ArbordynError, ValueError):
    pass


class BadPrime(ArbordynError, ValueError):
    pass


class NoWanderingWitness(ArbordynError):
    pass


class DegreeMismatch(ArbordynError, ValueError):
    pass


class TooLarge(ArbordynError):
    pass


class NotRepresentable(ArbordynError, ValueError):
    pass


class BoundTooLarge(ArbordynError, ValueError):
    pass

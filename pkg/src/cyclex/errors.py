"""Exception types raised across the package."""

from .algebra.bipoly import NotDivisible


class CyclexError(Exception):
    pass


class DomainError(CyclexError, ValueError):
    """The angular component g vanishes somewhere: there is an invariant
    line through the origin and no limit cycle can exist."""

    def __init__(self, message, angles=()):
        super().__init__(message)
        self.angles = tuple(angles)


class NoCycle(CyclexError):
    pass


class ContinuumOfPeriodicOrbits(CyclexError):
    pass


class StepFailure(CyclexError):
    pass


class OriginApproach(CyclexError):
    pass


class NotInvariant(CyclexError):
    def __init__(self, F, remainder):
        super().__init__(f"{F} is not invariant; division remainder {remainder}")
        self.F = F
        self.remainder = remainder


class DegenerateCurve(CyclexError):
    pass


class ParityMismatch(CyclexError):
    pass


class ResonantDenominator(CyclexError, ZeroDivisionError):
    pass


class LineNotInvariant(CyclexError):
    pass


class ZeroDenominator(CyclexError, ZeroDivisionError):
    pass


class UnsupportedDenominator(CyclexError):
    pass


class ParseError(CyclexError, ValueError):
    """Malformed system file or polynomial expression."""


__all__ = [
    "CyclexError",
    "DomainError",
    "NoCycle",
    "ContinuumOfPeriodicOrbits",
    "StepFailure",
    "OriginApproach",
    "NotDivisible",
    "NotInvariant",
    "DegenerateCurve",
    "ParityMismatch",
    "ResonantDenominator",
    "LineNotInvariant",
    "ZeroDenominator",
    "UnsupportedDenominator",
    "ParseError",
]

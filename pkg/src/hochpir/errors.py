"""Exception hierarchy.

``ConfigurationError`` covers bad input (CLI exit code 2); ``InvariantViolation``
covers a mathematical check that failed at runtime (exit code 3).
"""
from __future__ import annotations

from .exactla import WellDefinednessError


class HochpirError(Exception):
    pass


class ConfigurationError(HochpirError, ValueError):
    pass


class InvariantViolation(HochpirError, ArithmeticError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class InfiniteSliceError(ConfigurationError):
    """A slice would contain infinitely many basis elements."""


class CutoffError(ConfigurationError):
    """A slice needs coalgebra elements beyond the truncation weight."""


class DegreeParityError(ConfigurationError):
    pass


class AbelianizationMismatchError(ConfigurationError):
    pass


class IncompleteFamilyError(ConfigurationError):
    pass


class ParseError(ConfigurationError):
    pass


class BasisExpressionError(InvariantViolation):
    """An element assumed to be a Lie element is not in the Lie span."""


class DifferentialSquareError(InvariantViolation):
    pass


class SliceInstabilityError(InvariantViolation):
    """An operator maps a slice outside itself."""


class NegativeMultiplicityError(InvariantViolation):
    pass


class HodgeBoundError(InvariantViolation):
    pass


class ChainMapError(InvariantViolation):
    pass


__all__ = [
    "HochpirError", "ConfigurationError", "InvariantViolation", "InfiniteSliceError",
    "CutoffError", "DegreeParityError", "AbelianizationMismatchError",
    "IncompleteFamilyError", "ParseError", "BasisExpressionError",
    "DifferentialSquareError", "SliceInstabilityError", "NegativeMultiplicityError",
    "HodgeBoundError", "ChainMapError", "WellDefinednessError",
]


class LengthError(ConfigurationError):
    """A partition has more parts than the rank allows."""


class SizeMismatchError(ConfigurationError):
    pass


class DegreeError(ConfigurationError):
    """Map data is not degree-compatible."""


__all__ += ["LengthError", "SizeMismatchError", "DegreeError"]

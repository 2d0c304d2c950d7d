"""Exception hierarchy.

Every error carries an ``exit_code`` so the CLI can map failures onto its
stable contract: 1 usage/parse, 2 mathematical failure, 3 resource limit.
"""

from __future__ import annotations


class TwistedLabError(Exception):
    exit_code = 2

    def __init__(self, message: str = "", **witness):
        super().__init__(message or self.__class__.__name__)
        self.witness = witness

    def as_dict(self) -> dict:
        return {"error": self.__class__.__name__, "message": str(self), "witness": self.witness}


# scalars
class ConductorMismatch(TwistedLabError, ValueError):
    pass


class DivisionByZero(TwistedLabError, ZeroDivisionError):
    pass


# groups
class NotAssociative(TwistedLabError):
    pass


class NoIdentity(TwistedLabError):
    pass


class NoInverse(TwistedLabError):
    pass


class OrderCapExceeded(TwistedLabError):
    exit_code = 3


# coefficient algebra / linear algebra
class ShapeMismatch(TwistedLabError, ValueError):
    pass


class DimensionMismatch(TwistedLabError, ValueError):
    pass


# twisted action
class NotMultiplicative(TwistedLabError):
    pass


class NotStarPreserving(TwistedLabError):
    pass


class NotUnital(TwistedLabError):
    pass


class NotInvertible(TwistedLabError):
    pass


class AxiomViolation(TwistedLabError):
    pass


class AxiomIViolated(AxiomViolation):
    pass


class AxiomIIViolated(AxiomViolation):
    pass


class AxiomIIIViolated(AxiomViolation):
    pass


class NonUnitaryCocycleEntry(AxiomViolation):
    pass


class ConductorIncompatible(TwistedLabError, ValueError):
    pass


# convolution algebra
class SystemMismatch(TwistedLabError, ValueError):
    pass


class NotUnitary(TwistedLabError, ValueError):
    pass


# ideals / proof replay
class NotAnIdeal(TwistedLabError):
    pass


class NotInvariant(TwistedLabError):
    pass


class CapExceeded(TwistedLabError):
    exit_code = 3


class ParseError(TwistedLabError):
    exit_code = 1

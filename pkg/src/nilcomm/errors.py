"""Exception hierarchy for the finite-algebra engine."""

from __future__ import annotations


class NilcommError(Exception):
    """Base class for all engine errors."""


class InvalidParameterError(NilcommError):
    """An argument violates a constructor or operation precondition."""


class SizeCapError(NilcommError):
    """A construction would exceed the configured element cap."""

    def __init__(self, message: str, cap: int):
        super().__init__(message)
        self.cap = cap


class DecisionCapError(NilcommError):
    """An exhaustive scan would exceed the configured triple cap."""

    def __init__(self, message: str, cap: int):
        super().__init__(message)
        self.cap = cap


class ShapeMismatchError(InvalidParameterError):
    """Matrix shapes, or the rings they sit over, disagree."""


class InvalidHomError(InvalidParameterError):
    """A claimed ring homomorphism violates one of its axioms."""

    def __init__(self, message: str, pair=None):
        super().__init__(message)
        self.pair = pair


class ZeroAbsorbedError(InvalidParameterError):
    """A multiplicative closure reached zero; carries the product chain."""

    def __init__(self, message: str, chain):
        super().__init__(message)
        self.chain = tuple(chain)


class NonCentralGeneratorError(InvalidParameterError):
    """A localization generator lies outside the ring's center."""


class AxiomError(NilcommError):
    """A structure failed validation of its defining axioms."""


class ParseError(NilcommError):
    """A structure expression failed to parse or elaborate."""

    def __init__(self, message: str, line: int, column: int, expected=()):
        super().__init__(f"{message} at line {line}, column {column}")
        self.line = line
        self.column = column
        self.expected = tuple(expected)

"""Exception types shared across the library."""
from __future__ import annotations


class OrthologicError(Exception):
    """Base class for every error raised by this package."""


class SizeMismatch(OrthologicError):
    """Arrays describing one structure disagree about its size or range."""


class NotALattice(OrthologicError):
    """The given order is not a lattice (or not even a partial order)."""

    def __init__(self, message: str, pair: tuple[int, int] | None = None):
        super().__init__(message)
        self.pair = pair


class NoSuchElement(OrthologicError):
    """An element index or name is out of range / undeclared."""


class TooLarge(OrthologicError):
    """A size cap protecting an exhaustive scan was exceeded."""


class KindMismatch(OrthologicError):
    """A structure of the wrong kind was supplied to an operation."""


class NotOrthomodular(OrthologicError):
    """A conversion requiring orthomodularity was given a lattice without it."""

    def __init__(self, message: str, witness: tuple[int, ...] = ()):
        super().__init__(message)
        self.witness = witness


class ValidationFailed(OrthologicError):
    """A constructor's axiom checks did not pass; carries the failing report."""

    def __init__(self, report):
        super().__init__(f"{report.title}: {report.summary()}")
        self.report = report


class ConversionInconsistency(OrthologicError):
    """A structure conversion produced output that fails its own checks.

    Raised only when validated input leads to invalid output, i.e. an
    internal bug, never on bad user input.
    """


class InconsistentCharacterizations(OrthologicError):
    """Independent characterizations of one property disagreed.

    Also used when a derived cross-check fails although the defining
    axioms passed; both situations signal an implementation bug.
    """


class ParseError(OrthologicError):
    """Malformed algebra/frame document."""

    def __init__(self, message: str, line: int = 0, column: int = 0):
        super().__init__(f"line {line}, column {column}: {message}" if line else message)
        self.line = line
        self.column = column


class UnknownElement(ParseError):
    """A document refers to an element or point that was never declared."""


class DuplicateElement(ParseError):
    """An element, point, row, or mapping was declared twice."""


class MissingSection(ParseError):
    """A section required by the document's kind is absent."""

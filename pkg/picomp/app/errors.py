from __future__ import annotations

from typing import Any


class PicompError(ValueError):
    """Base class for every error raised by the toolkit."""

    def __init__(self, message: str, *, subject: Any = None):
        self.subject = subject
        super().__init__(message)

    @property
    def kind(self) -> str:
        return type(self).__name__


class ParseError(PicompError):
    def __init__(self, message: str, line: int, column: int):
        self.line = line
        self.column = column
        super().__init__(f"{message} at {line}:{column}")


class MalformedTerm(PicompError):
    pass


class SortMismatch(PicompError):
    pass


class StaleRedex(PicompError):
    pass


class UsageNotInfinite(PicompError):
    pass


class NotCpsShape(PicompError):
    pass


class UntypablePi(PicompError):
    pass


class CannotSaturate(PicompError):
    pass


class IllTypedArgument(PicompError):
    pass


class DiagramNotApplicable(PicompError):
    pass


class TypingError(PicompError):
    pass


class UnboundVariable(TypingError):
    pass


class ArityMismatch(TypingError):
    pass


class BehaviorMisuse(TypingError):
    pass


class RecursiveDefinition(TypingError):
    pass


class UsageViolation(TypingError):
    pass


class NotInFragment(TypingError):
    pass


class TypeMismatch(TypingError):
    pass


class MissingAnnotation(TypingError):
    pass


__all__ = [
    "ArityMismatch",
    "BehaviorMisuse",
    "CannotSaturate",
    "DiagramNotApplicable",
    "IllTypedArgument",
    "MalformedTerm",
    "MissingAnnotation",
    "NotCpsShape",
    "NotInFragment",
    "ParseError",
    "PicompError",
    "RecursiveDefinition",
    "SortMismatch",
    "StaleRedex",
    "TypeMismatch",
    "TypingError",
    "UnboundVariable",
    "UntypablePi",
    "UsageNotInfinite",
    "UsageViolation",
]

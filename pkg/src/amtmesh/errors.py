"""Exception types shared across the package."""

from __future__ import annotations


class AmtError(Exception):
    """Base class for all errors raised by this package."""


class ObjParseError(AmtError):
    """Malformed OBJ input. Carries the 1-based line number when known."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class SequenceError(AmtError):
    """Malformed item or token sequence. Carries the 0-based item position."""

    def __init__(self, message: str, position: int | None = None):
        self.position = position
        if position is not None:
            message = f"item {position}: {message}"
        super().__init__(message)


class VocabularyError(AmtError):
    """Coordinate or id outside the vocabulary layout."""


class FormatError(AmtError):
    """Corrupt or unsupported serialized token stream."""

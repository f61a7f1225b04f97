"""Exception hierarchy for the engine.

Every error raised on a user-facing path derives from :class:`MiniBqmlError`
so the CLI can turn any engine failure into a diagnostic instead of a crash.
"""

from __future__ import annotations


class MiniBqmlError(Exception):
    """Base class for all engine errors."""


# --- SQL frontend ---------------------------------------------------------

class PositionedError(MiniBqmlError):
    """An error anchored to a 1-based line/column in the source text."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


class LexError(PositionedError):
    """Illegal character or unterminated string/quoted identifier."""


class ParseError(PositionedError):
    """Token stream does not match the grammar."""

    def __init__(self, message: str, line: int, column: int, expected: tuple[str, ...] = ()):
        if expected:
            message = f"{message}; expected {', '.join(expected)}"
        super().__init__(message, line, column)
        self.expected = expected


class OptionError(MiniBqmlError):
    """Unknown model option key or out-of-domain option value."""

    def __init__(self, key: str, message: str):
        super().__init__(f"option '{key}': {message}")
        self.key = key


# --- storage and catalog --------------------------------------------------

class IoError(MiniBqmlError):
    """Unreadable or unwritable file."""


class CsvError(MiniBqmlError):
    """Malformed CSV content (ragged row, broken quoting)."""

    def __init__(self, message: str, row: int):
        super().__init__(f"{message} (row {row})")
        self.row = row


class CatalogError(MiniBqmlError):
    """Duplicate name registered without an explicit replace."""


class FormatError(MiniBqmlError):
    """Model file with a wrong schema version or corrupted document."""


# --- query execution ------------------------------------------------------

class UnknownNameError(MiniBqmlError):
    """Reference to a table, model, or column that does not exist."""


class QueryTypeError(MiniBqmlError):
    """Operation applied to values of an unsupported type."""


class AggregateMixError(MiniBqmlError):
    """Aggregate and non-aggregate projections mixed without GROUP BY."""


# --- preprocessing and training -------------------------------------------

class LabelError(MiniBqmlError):
    """Label column missing, non-binary, or single-class."""


class EmptyInputError(MiniBqmlError):
    """No rows available where at least one is required."""


class SchemaError(MiniBqmlError):
    """Input schema does not match the fitted schema."""


class SplitError(MiniBqmlError):
    """A train/eval split would leave one side empty."""


class DataError(MiniBqmlError):
    """Training data violates a trainer precondition."""


# --- evaluation -----------------------------------------------------------

class LengthError(MiniBqmlError):
    """Label and score vectors disagree in length or are empty."""


class DegenerateError(MiniBqmlError):
    """Curve/AUC requested for single-class labels."""


class ModelTypeError(MiniBqmlError):
    """Operation unsupported for this model type."""

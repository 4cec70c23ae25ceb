"""Exception hierarchy for precision estimation.

Every error carries a ``category`` (its class name) and the process exit
code the command-line front end reports for it.
"""

from typing import Optional


class PrecisionError(Exception):
    """Base class for all errors raised by this package."""

    exit_code = 4

    @property
    def category(self) -> str:
        return type(self).__name__


class ValidationError(PrecisionError):
    """A flag, parameter or configuration value is invalid."""

    exit_code = 2


class DataError(PrecisionError):
    """Input data cannot support the requested computation."""

    exit_code = 3


# Validation errors

class InvalidConfigError(ValidationError):
    pass


class InvalidGridAxisError(ValidationError):
    pass


class InvalidTargetError(ValidationError):
    pass


class QOutOfRangeError(ValidationError):
    pass


class SizeExceedsPopulationError(ValidationError):
    pass


class TooLargeForEnumerationError(ValidationError):
    pass


class EmptyLabelSetError(ValidationError):
    pass


class BackgroundInLabelSetError(ValidationError):
    pass


# Data errors

class EmptySampleError(DataError):
    pass


class DegenerateSpreadError(DataError):
    pass


class EmptyListError(DataError):
    pass


class DuplicateSubjectError(DataError):
    pass


class NonFiniteValueError(DataError):
    pass


class OutOfBoundsError(DataError):
    pass


class DimMismatchError(DataError):
    pass


class UndefinedDiceError(DataError):
    pass


class InputFileError(DataError):
    """An input file is missing or unreadable."""


class ParseError(DataError):
    """Malformed sample or volume input.

    Attributes:
        line: 1-based line number in the source, if known.
        offset: Character offset in the source, if known.
    """

    def __init__(self, message: str, line: Optional[int] = None, offset: Optional[int] = None):
        location = []
        if line is not None:
            location.append(f"line {line}")
        if offset is not None:
            location.append(f"offset {offset}")
        if location:
            message = f"{message} ({', '.join(location)})"
        super().__init__(message)
        self.line = line
        self.offset = offset

"""Exception hierarchy shared by every module."""

from __future__ import annotations


class MonetaryLensError(Exception):
    """Base class for all package errors."""


class AlignmentError(MonetaryLensError):
    pass


class CurrencyError(MonetaryLensError):
    pass


class SpliceError(MonetaryLensError):
    pass


class MissingPeriodError(MonetaryLensError, KeyError):
    def __str__(self) -> str:  # KeyError quotes its message otherwise
        return str(self.args[0]) if self.args else ""


class DegenerateBaseError(MonetaryLensError, ZeroDivisionError):
    pass


class DomainError(MonetaryLensError, ValueError):
    pass


class FlowShiftError(MonetaryLensError, ValueError):
    pass


class UnknownGoodError(MonetaryLensError, LookupError):
    pass


class UnknownSeriesError(MonetaryLensError, LookupError):
    pass


class ManifestError(MonetaryLensError):
    pass


class DataIOError(MonetaryLensError, OSError):
    """A file named by a manifest or the command line does not exist."""


class ParseError(MonetaryLensError, ValueError):
    """Strict-parser failure; ``line`` is 1-based, or None for file-level problems."""

    def __init__(self, message: str, path: str | None = None, line: int | None = None):
        self.path = path
        self.line = line
        where = path or "<input>"
        if line is not None:
            where = f"{where}:{line}"
        super().__init__(f"{where}: {message}")


class CompositionWarning(UserWarning):
    """A composed monetary aggregate went negative in some period."""

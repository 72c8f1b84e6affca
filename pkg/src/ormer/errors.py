"""Exception hierarchy shared by every module.

All errors derive from :class:`OrmerError` so the CLI can turn any of them
into a machine-readable message with one ``except`` clause.
"""

from __future__ import annotations


class OrmerError(Exception):
    """Base class for all errors raised by this package."""

    code = "error"


class FixedPointOverflow(OrmerError, OverflowError):
    code = "overflow"


class FixedPointDivisionByZero(OrmerError, ZeroDivisionError):
    code = "division_by_zero"


class NonPositivePrice(OrmerError, ValueError):
    code = "non_positive_price"

    def __init__(self, message: str, row: int | None = None):
        super().__init__(message)
        self.row = row


class TickOutOfRange(OrmerError, ValueError):
    code = "tick_out_of_range"


class FieldOutOfRange(OrmerError, ValueError):
    code = "field_out_of_range"


class NotBooted(OrmerError):
    code = "not_booted"


class DegenerateSpacing(OrmerError, ArithmeticError):
    code = "degenerate_spacing"


class CountOverflow(OrmerError, OverflowError):
    code = "count_overflow"


class InsufficientHistory(OrmerError):
    code = "insufficient_history"


class NonMonotonicTimestamp(OrmerError, ValueError):
    code = "non_monotonic_timestamp"

    def __init__(self, message: str, row: int | None = None):
        super().__init__(message)
        self.row = row


class ParseError(OrmerError, ValueError):
    code = "parse_error"

    def __init__(self, message: str, row: int | None = None):
        super().__init__(message)
        self.row = row


class EmptyWindow(OrmerError, ValueError):
    code = "empty_window"


class EmptyOverlap(OrmerError, ValueError):
    code = "empty_overlap"


class NonPositiveValue(OrmerError, ValueError):
    code = "non_positive_value"


class ZeroVariance(OrmerError, ValueError):
    code = "zero_variance"


class ZeroDenominator(OrmerError, ZeroDivisionError):
    code = "zero_denominator"


class ZeroCost(OrmerError, ZeroDivisionError):
    code = "zero_cost"


class NoOpenInvocation(OrmerError, RuntimeError):
    code = "no_open_invocation"


class NoData(OrmerError, ValueError):
    code = "no_data"


class SpecOutOfRange(OrmerError, ValueError):
    code = "spec_out_of_range"


class ConfigError(OrmerError, ValueError):
    code = "config_error"

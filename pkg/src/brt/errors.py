"""Exception hierarchy.

Every error raised by the package derives from :class:`BrtError`. The three
intermediate classes map one-to-one onto CLI exit codes (usage, data,
numeric), so callers can catch at whatever granularity they need.
"""

from __future__ import annotations


class BrtError(Exception):
    """Base class for all package errors."""


class ConfigError(BrtError, ValueError):
    """Invalid transform or sweep configuration."""


class DataError(BrtError, ValueError):
    """Malformed or unusable input data."""


class NumericError(BrtError, ArithmeticError):
    """A computation hit a numerically undefined case."""


# configuration
class ScaleCountTooSmall(ConfigError):
    pass


class LambdaCountMismatch(ConfigError):
    pass


class NonPositiveLambda(ConfigError):
    pass


class WindowTooSmall(ConfigError):
    pass


# data
class InvalidSignal(DataError):
    pass


class MismatchedLengths(DataError):
    pass


class EmptyInput(DataError):
    pass


class EmptyResult(DataError):
    pass


class ZeroPowerBaseline(DataError):
    pass


class ParseError(DataError):
    def __init__(self, message: str, row: int | None = None, column: int | None = None):
        where = []
        if row is not None:
            where.append(f"row {row}")
        if column is not None:
            where.append(f"column {column}")
        super().__init__(f"{', '.join(where)}: {message}" if where else message)
        self.row = row
        self.column = column


class NonUniformSampling(DataError):
    pass


class MissingSampleRate(DataError):
    pass


class InconsistentSampleRate(DataError):
    pass


# numeric
class DegenerateWeights(NumericError):
    pass


class IdenticalSignals(NumericError):
    """SNR is infinite because the corrupted signal equals the baseline."""


class SweepCellError(BrtError):
    """Wraps a pipeline failure with the sweep cell that produced it."""

    def __init__(self, cell: dict, cause: BrtError):
        super().__init__(f"sweep cell {cell} failed: {cause}")
        self.cell = cell
        self.cause = cause

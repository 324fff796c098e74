"""Exception hierarchy for the toolkit.

DataError covers malformed or inconsistent input (CLI exit code 2),
NumericalError covers failures of the numerical machinery (exit code 3).
"""


class ToolkitError(Exception):
    """Base class for all toolkit-specific errors."""


class DataError(ToolkitError):
    """Invalid, malformed, or inconsistent input data."""


class NumericalError(ToolkitError):
    """Failure inside the numerical pipeline."""


# core series / window errors
class EmptySeries(DataError):
    pass


class DuplicateEpoch(DataError):
    pass


class NonFiniteValue(DataError):
    pass


class NonPositiveSigma(DataError):
    pass


class WindowOutOfRange(DataError):
    pass


class EmptyWindow(DataError):
    pass


class DegenerateWindow(DataError):
    pass


# ingest errors
class MalformedLine(DataError):
    def __init__(self, lineno, message):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


class UnknownFormat(DataError):
    pass


class SchemaMismatch(DataError):
    pass


# harmonic / predictor errors
class NonPositiveF0(NumericalError):
    pass


class TooManyFrequencies(NumericalError):
    pass


class UnderdeterminedSystem(NumericalError):
    pass


class NonCausalEpoch(DataError):
    pass


class UnknownWavelet(DataError):
    pass


# metrics errors
class LengthMismatch(DataError):
    pass


class EmptyInput(DataError):
    pass


class InsufficientData(DataError):
    pass


class ZeroDenominator(DataError):
    pass


# outlier / event errors
class SeriesTooShort(DataError):
    pass


class TooManyInjections(DataError):
    pass


class NoDeparture(DataError):
    pass


class NoEventInHorizon(DataError):
    pass

from typing import Optional


class OpBracketError(Exception):
    """Base class of every error raised by the library."""


class ArgumentError(OpBracketError, ValueError):
    """An argument is out of range or a value type invariant is violated."""


class PoleError(OpBracketError):
    """A rational function was evaluated at (or within tolerance of) one of its poles.

    Attributes:
        pole: the offending pole (an eigenvalue x_j or a zero of P_N / S_N).
    """

    def __init__(self, message: str, pole: complex):
        super().__init__(message)
        self.pole = pole


class DegenerateSpectrumError(OpBracketError):
    pass


class IllConditionedMeasureError(OpBracketError):
    pass


class ConvergenceError(OpBracketError):
    pass


class ConsistencyError(OpBracketError):
    pass


class NumericError(OpBracketError):
    pass


class DegeneracyError(NumericError):
    pass


class BlowUpError(NumericError):
    """A flow left its admissible region (a_j <= 0 or |alpha_j| >= 1).

    Attributes:
        time: the time stamp of the first inadmissible state.
    """

    def __init__(self, message: str, time: Optional[float] = None):
        super().__init__(message)
        self.time = time


class ConfigError(OpBracketError):
    """A run configuration or preset failed to parse or validate."""

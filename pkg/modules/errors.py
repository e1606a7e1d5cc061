"""
Error types
Every failure the computation modules report derives from NeronError
"""

EXIT_INPUT = 1
EXIT_PRECISION = 2
EXIT_UNSUPPORTED = 3
EXIT_MISMATCH = 4


class NeronError(ValueError):
    """Base class, carries the CLI exit code of its category"""

    exit_code = EXIT_INPUT


class ZeroDenominator(NeronError):
    pass


class DivisionByZero(NeronError):
    pass


class NotExpandable(NeronError):
    """Rational function has a pole at T=0"""


class PrecisionLoss(NeronError):
    exit_code = EXIT_PRECISION


class WildDegree(NeronError):
    """Base change degree divisible by the residue characteristic"""

    exit_code = EXIT_UNSUPPORTED


class NegativeValuation(NeronError):
    pass


class NoRationalRoot(NeronError):
    pass


class ExtensionBound(NeronError):
    exit_code = EXIT_UNSUPPORTED


class SingularCurve(NeronError):
    pass


class WildCurve(NeronError):
    """No tame extension of bounded degree semi-stabilizes the curve"""

    exit_code = EXIT_UNSUPPORTED


class IncompleteTower(NeronError):
    pass


class PositiveSplitRank(NeronError):
    """Torus with a split part: the component group is infinite"""


class UnsupportedField(NeronError):
    exit_code = EXIT_UNSUPPORTED


class ParseError(NeronError):
    """Malformed input file, with 1-based line and column"""

    def __init__(self, message: str, line: int = 0, column: int = 0):
        self.line = line
        self.column = column
        location = f"line {line}, column {column}: " if line else ""
        super().__init__(f"{location}{message}")

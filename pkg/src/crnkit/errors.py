"""Exception hierarchy.

Every error raised on purpose by the library derives from :class:`CRNError`.
Parse problems derive from :class:`InputError` as well, which the command
line front end maps to exit code 1; everything else maps to exit code 2.
"""


class CRNError(Exception):
    """Base class for library errors."""


class InputError(CRNError, ValueError):
    """Malformed user input (network text, assignments, expressions)."""


class NetworkSyntaxError(InputError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)


class DuplicateRateLabel(NetworkSyntaxError):
    pass


class NegativeStoichiometry(NetworkSyntaxError):
    pass


class UnknownLabel(InputError):
    pass


class NonpositiveRate(InputError):
    pass


class MissingRate(InputError):
    pass


class InvalidNetwork(CRNError, ValueError):
    pass


class DimensionMismatch(CRNError, ValueError):
    pass


class EmptyPolyhedron(CRNError):
    pass


class MissingVariableValue(CRNError, KeyError):
    pass


class ExactDivisionFailure(CRNError, ArithmeticError):
    """A division that must be exact left a remainder (an internal bug)."""


class SingularSymbolicSystem(CRNError, ZeroDivisionError):
    pass


class ZeroPolynomial(CRNError, ValueError):
    pass


class NotLinearInChosenVariables(CRNError, ValueError):
    pass


class EliminationFailed(CRNError):
    pass


class NotComplexBalanced(CRNError):
    pass


class ClassEmpty(CRNError):
    pass


class NoConvergence(CRNError, RuntimeError):
    pass


class NonpositiveInput(CRNError, ValueError):
    pass


class NonpositiveState(NonpositiveInput):
    pass


class StepUnderflow(CRNError, RuntimeError):
    pass


class WitnessSearchFailed(CRNError):
    def __init__(self, message, direction=None):
        super().__init__(message)
        self.direction = direction


class TooManyTerms(CRNError):
    pass


class DimensionCapExceeded(CRNError, ValueError):
    """Exact polyhedral computations are limited to small dimensions."""

"""Exception types raised by the analysis pipeline.

Each class carries the process exit code used by the command line tool.
"""


class QuiverWeylError(Exception):
    exit_code = 1


class InputError(QuiverWeylError, ValueError):
    """Malformed or inconsistent input data."""

    exit_code = 2


class ParseError(InputError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(f"{message}{where}")


class ValidationError(InputError):
    def __init__(self, field: str, message: str):
        self.field = field
        super().__init__(f"{field}: {message}")


class EmptyVariety(QuiverWeylError):
    """The dimension vector is not a sum of positive roots."""

    exit_code = 3


class MethodNotApplicable(QuiverWeylError):
    """Some canonical component fails the resolution criterion."""

    exit_code = 4

    def __init__(self, message: str, component=None):
        self.component = component
        super().__init__(message)


class InternalInconsistency(QuiverWeylError, AssertionError):
    """A structural invariant that should always hold was violated."""

    exit_code = 5

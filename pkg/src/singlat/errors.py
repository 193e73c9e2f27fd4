"""Exception hierarchy. Exit codes in the CLI map onto these classes."""


class SinglatError(Exception):
    """Base class for every error raised by this package."""


class InputError(SinglatError):
    """Malformed user input: bad graph data, unknown ids, unparsable text."""


class ParseError(InputError):
    """Syntax or semantic error in the graph DSL, with source position."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            message = f"{where}: {message}"
        super().__init__(message)


class PreconditionError(SinglatError):
    """Operation invoked outside its stated domain (e.g. the intersection
    form is not negative definite, or a classifier was asked about a graph
    outside the classes it covers)."""


class InternalError(SinglatError):
    """A cross-check or invariant failed. Always a bug, never user error."""

"""Exception hierarchy shared by the whole package."""


class LobellError(Exception):
    """Base class for every error raised by this package."""


class NonRealRadicand(LobellError):
    """A square root was requested of a number that is not positive."""


class DivisionByZero(LobellError, ZeroDivisionError):
    pass


class DomainError(LobellError, ValueError):
    """A family parameter (n, k, ...) is outside the supported range."""


class ParseError(LobellError):
    """Syntax error in a diagram or coloring file."""

    def __init__(self, message, line=None, column=None):
        self.message = message
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)


class ValidationError(ParseError):
    """Well-formed input that violates a semantic constraint."""


class NotLorentzian(LobellError):
    """The Gram matrix does not have signature (d, 1, r)."""


class IncompleteColoring(LobellError):
    pass

"""Exception hierarchy shared across the package."""


class LudicError(Exception):
    """Base class for all domain errors raised by this package."""


class ParseError(LudicError):
    """Lexing or parsing failure, carrying a 1-based source position."""

    def __init__(self, message: str, line: int = 0, column: int = 0):
        super().__init__(f"{message} (line {line}, column {column})" if line else message)
        self.message = message
        self.line = line
        self.column = column


class CompileError(LudicError):
    """A well-formed tree that cannot be compiled into a game."""


class RulesError(LudicError):
    """Rule evaluation called outside its contract (e.g. on a terminal state)."""


class IllegalMoveError(RulesError):
    """A move rejected by the validating successor path."""


class EnumerationCapError(LudicError):
    """Exhaustive enumeration exceeded its node or position cap."""

"""Exception types shared across the package."""


class ModregError(Exception):
    """Base class for errors raised by this package."""


class DomainError(ModregError):
    """An input value violates an operation's preconditions."""


class NonCanonicalChainError(DomainError):
    """Invariant factors were given out of divisibility-chain order."""


class CapacityError(ModregError):
    """An exhaustive computation would exceed a configured cap.

    Raised instead of truncating: the oracle never returns an answer it did
    not fully verify.
    """


class ParseError(ModregError):
    """Malformed textual input; carries the offending line and column."""

    def __init__(self, message: str, line: int = 1, column: int = 1):
        super().__init__(f"parse error at line {line}, column {column}: {message}")
        self.line = line
        self.column = column

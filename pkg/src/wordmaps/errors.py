"""Exception types shared across the package."""


class WordmapsError(Exception):
    """Base class for errors raised by this package."""


class ParseError(WordmapsError, ValueError):
    """Malformed word text. ``position`` is the 0-based offset of the failure."""

    def __init__(self, message, text="", position=0):
        self.text = text
        self.position = position
        super().__init__(f"{message} at position {position}")


class BudgetExceeded(WordmapsError):
    """A computation would exceed the configured desk-scale budget."""


class InvariantViolation(WordmapsError, AssertionError):
    """An internal consistency check failed; indicates a bug, not bad input."""

"""
Utility functions for coxforge.

Provides the exception hierarchy shared by every module, plus small helpers
for rendering words and generator names.
"""
import logging
from typing import Sequence

logger = logging.getLogger(__file__)


class CoxforgeException(Exception):
    """Raise for clear and user friendly error messages."""


class InputError(CoxforgeException):
    """The input document or a command-line value is invalid."""


class DslSyntaxError(InputError):
    """A parse error located at a line and column of the source document."""

    def __init__(self, message: str, line: int, column: int, origin: str = "<inline>"):
        self.line = line
        self.column = column
        self.origin = origin
        super().__init__(f"{origin}:{line}:{column}: {message}")


class BudgetExceeded(CoxforgeException):
    """An enumeration or exact-mode size bound was exceeded."""


class FieldTooLarge(BudgetExceeded):
    """The cyclotomic field needed by a Coxeter matrix is too large for exact mode."""


class InvariantError(CoxforgeException):
    """An internal invariant failed; the result cannot be trusted."""


class PrecisionExhausted(InvariantError):
    """Sign certification did not separate a value from zero within the precision cap."""


# === Utility functions ===#
def default_names(n: int) -> tuple:
    """Generator names used when the input does not provide any."""
    letters = "stuvwxyzabcdefghijklmnopqr"
    return tuple(letters[i] if i < len(letters) else f"g{i + 1}" for i in range(n))


def render_word(word: Sequence[int], names: Sequence[str]) -> str:
    """Renders a generator word with the user's generator names."""
    if all(len(name) == 1 for name in names):
        return "".join(names[s] for s in word)
    return ".".join(names[s] for s in word)

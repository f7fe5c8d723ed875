"""Exception hierarchy shared by all modules."""

from __future__ import annotations


class ModgalError(Exception):
    """Base class for every error raised by this package."""


class FieldError(ModgalError):
    """Invalid field parameters (composite characteristic, reducible modulus, caps)."""


class FieldMismatchError(ModgalError):
    """Operands live in different fields."""


class SingularError(ModgalError):
    """A linear system that must be invertible is singular."""


class GroupError(ModgalError):
    """A multiplication table violates the group axioms or is not a p-group."""


class RingMismatchError(ModgalError):
    """Polynomials or maps from incompatible rings were combined."""


class ActionError(ModgalError):
    """Generator assignments do not define a group action.

    ``triple`` is ``(variable, g, h)`` with ``((v)g)h != (v)(gh)`` when the
    failure came from the exhaustive composition check.
    """

    def __init__(self, message: str, triple: tuple[str, int, int] | None = None):
        super().__init__(message)
        self.triple = triple


class NotAPointError(ModgalError):
    """An element that was required to have trace one does not."""


class ParseError(ModgalError):
    """Syntax error in a polynomial, spec string or algebra file."""

    def __init__(self, message: str, line: int | None = None, col: int | None = None):
        loc = ""
        if line is not None:
            loc = f"line {line}"
            if col is not None:
                loc += f", col {col}"
            loc += ": "
        super().__init__(loc + message)
        self.line = line
        self.col = col

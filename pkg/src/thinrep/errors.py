"""Exception hierarchy shared by all modules."""

from __future__ import annotations


class ThinrepError(Exception):
    """Base class for every error raised by this package."""


class UsageError(ThinrepError, ValueError):
    """Caller passed arguments that violate an operation's preconditions."""


class FieldMismatchError(UsageError):
    """Operands live over different fields."""


class InternalLogicError(ThinrepError, RuntimeError):
    """An internal consistency check failed; this indicates a bug."""


class NoSolution(ThinrepError, ArithmeticError):
    """A linear system has no solution."""


class CertificateError(ThinrepError):
    """A decomposition certificate does not match its representation."""


class ParseError(UsageError):
    """Malformed input document.

    ``line`` and ``path`` locate the problem when known; ``path`` is a
    JSON-pointer-like string such as ``maps[1][3]``.
    """

    def __init__(self, message: str, *, line: int | None = None, path: str | None = None):
        self.line = line
        self.path = path
        where = []
        if line is not None:
            where.append(f"line {line}")
        if path is not None:
            where.append(path)
        super().__init__(f"{', '.join(where)}: {message}" if where else message)

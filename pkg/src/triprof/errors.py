"""Shared exception types, each mapped to a CLI exit code."""


class UsageError(ValueError):
    """Caller passed an argument outside an operation's contract."""

    exit_code = 1


class ParseError(ValueError):
    """Malformed input data; the message carries file/line context."""

    exit_code = 2


class IntegrityError(RuntimeError):
    """An internal consistency check failed (implementation fault, not input fault)."""

    exit_code = 2

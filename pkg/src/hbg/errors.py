"""Exception types shared across the toolkit."""

from __future__ import annotations


class HbgError(Exception):
    """Base class for every error raised by this package."""


class ParseError(HbgError):
    """Malformed word, presentation or script text."""

    def __init__(self, message: str, position: int | None = None, line: int | None = None,
                 source: str | None = None):
        self.message = message
        self.position = position
        self.line = line
        self.source = source
        where = []
        if source:
            where.append(source)
        if line is not None:
            where.append(f"line {line}")
        if position is not None:
            where.append(f"col {position}")
        prefix = ":".join(where)
        super().__init__(f"{prefix}: {message}" if prefix else message)


class UnknownGenerator(HbgError):
    def __init__(self, token: str):
        self.token = token
        super().__init__(f"unknown generator {token!r}")


class AlphabetMismatch(HbgError):
    pass


class DuplicateGenerator(HbgError):
    pass


class DuplicateLabel(HbgError):
    pass


class GeneratorInTarget(HbgError):
    pass


class UnknownRelation(HbgError):
    pass


class CertificateMismatch(HbgError):
    def __init__(self, expected, evaluated):
        self.expected = expected
        self.evaluated = evaluated
        super().__init__(f"certificate evaluates to {evaluated} but {expected} was required")


class BadEliminationRelator(HbgError):
    pass


class NameClash(HbgError):
    pass


class UnknownGroupName(HbgError):
    pass


class MissingAssignment(HbgError):
    pass

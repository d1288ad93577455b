"""Exception hierarchy shared by the whole package.

``DomainError`` covers everything a correct caller can trigger with bad
mathematical input (CLI exit code 1); ``UsageError`` covers malformed
invocations (exit code 2).
"""


class RRSpaceError(Exception):
    pass


class DomainError(RRSpaceError):
    pass


class InvalidInput(DomainError):
    pass


class SingularMatrix(DomainError):
    pass


class ContractViolation(DomainError):
    pass


class UnknownPlace(DomainError):
    pass


class MaxMinIncomplete(DomainError):
    pass


class FieldTooSmall(DomainError):
    pass


class NotIrreducible(DomainError):
    pass


class NotMonic(DomainError):
    pass


class PrecisionCapExceeded(DomainError):
    pass


class ParseError(DomainError):
    """Syntax error in a curve file, divisor or element string."""

    def __init__(self, message, line=1, col=1):
        super().__init__(f"{line}:{col}: {message}")
        self.message = message
        self.line = line
        self.col = col


class UsageError(RRSpaceError):
    pass

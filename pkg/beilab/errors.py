"""
Exception hierarchy. Every user-facing failure carries the CLI exit code
it maps to (1 input, 2 verification failure, 3 capacity).
"""


class BeiLabError(Exception):
    exit_code = 1


class GraphParseError(BeiLabError):
    def __init__(self, message: str, token: str | None = None):
        super().__init__(message if token is None else f"{message}: {token!r}")
        self.token = token


class PolynomialParseError(BeiLabError):
    def __init__(self, message: str, token: str | None = None):
        super().__init__(message if token is None else f"{message}: {token!r}")
        self.token = token


class DomainError(BeiLabError):
    """The hypotheses of an operation do not hold for its input."""


class CapacityError(BeiLabError):
    exit_code = 3

    def __init__(self, stage: str, message: str):
        super().__init__(f"[{stage}] {message}")
        self.stage = stage


class VerificationError(BeiLabError):
    """A proven statement failed on a computed instance; always a bug."""

    exit_code = 2

"""Exception hierarchy shared by the library and the command line.

Every error carries the process exit code the CLI maps it to.
"""


class PadicSolveError(Exception):
    exit_code = 1


class DomainError(PadicSolveError):
    """An argument lies outside the domain of the operation."""

    exit_code = 2


class HypothesisViolationError(DomainError):
    """A Hensel seed does not satisfy f(seed) = 0 with unit derivative."""


class UnsupportedCaseError(PadicSolveError):
    """The instance falls in a case for which no counting result is known."""

    exit_code = 2

    def __init__(self, reason: str):
        super().__init__(f"unsupported case: {reason}")
        self.reason = reason


class InternalConsistencyError(PadicSolveError):
    exit_code = 3


class VerificationMismatchError(PadicSolveError):
    """Two independent methods disagree on a cell or an instance."""

    exit_code = 3

    def __init__(self, message: str, cell: dict):
        super().__init__(message)
        self.cell = cell


class ResourceLimitError(PadicSolveError):
    exit_code = 4

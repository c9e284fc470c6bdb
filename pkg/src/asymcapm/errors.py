"""Exception hierarchy. The CLI maps each family to its own exit code."""


class AsymCapmError(Exception):
    """Base class for all package errors."""


class DataError(AsymCapmError, ValueError):
    """Bad or unreadable input data (files, series invariants, alignment)."""

    def __init__(self, message: str, row: int | None = None, path: str | None = None):
        self.row = row
        self.path = path
        prefix = ""
        if path is not None:
            prefix += f"{path}: "
        if row is not None:
            prefix += f"row {row}: "
        super().__init__(prefix + message)


class EstimationError(AsymCapmError, ValueError):
    """A regression or beta could not be estimated (e.g. zero market variance)."""

    def __init__(self, message: str, stage: str | None = None):
        self.stage = stage
        super().__init__(f"[{stage}] {message}" if stage else message)


class DomainError(AsymCapmError, ValueError):
    """Argument outside the mathematical domain of a special function."""


class ConvergenceError(AsymCapmError, ArithmeticError):
    """An iterative evaluation hit its iteration cap."""

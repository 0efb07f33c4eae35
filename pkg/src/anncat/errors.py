"""Exception types shared across the package."""
from __future__ import annotations


class AnnCatError(Exception):
    """Base class for all package errors."""


class FormatError(AnnCatError, ValueError):
    """Malformed input: wrong shapes, out-of-range entries, unparsable files."""

    def __init__(self, message: str, location: str | None = None):
        self.location = location
        super().__init__(f"{location}: {message}" if location else message)


class InvalidOrderError(AnnCatError, ValueError):
    pass


class InvalidStructureError(AnnCatError, ValueError):
    """Well-formed input that violates a mathematical axiom; carries the report."""

    def __init__(self, message: str, report=None):
        self.report = report
        super().__init__(message)


class NormalizationError(InvalidStructureError):
    def __init__(self, kind: str, witnesses: list[tuple[int, ...]]):
        self.kind = kind
        self.witnesses = witnesses
        super().__init__(
            f"{kind} cochain violates its normalization pattern at {witnesses[0]}"
            + (f" (+{len(witnesses) - 1} more)" if len(witnesses) > 1 else "")
        )


class AmbientMismatchError(AnnCatError, ValueError):
    pass


class DomainError(AnnCatError, ValueError):
    """Composition of skeletal morphisms living on different objects."""


class BudgetExceededError(AnnCatError):
    def __init__(self, size: int, budget: int, what: str = "search space"):
        self.size = size
        self.budget = budget
        super().__init__(f"{what} has {size} elements, exceeding budget {budget}")


class SizeRefusalError(AnnCatError):
    def __init__(self, message: str, sizes: dict):
        self.sizes = sizes
        super().__init__(message)


class InternalInconsistencyError(AnnCatError, RuntimeError):
    """A proven identity failed to hold; indicates a bug, never bad input."""

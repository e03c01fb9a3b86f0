"""Exception types shared across the package."""

from __future__ import annotations

__all__ = [
    "DegenerateExponentError",
    "DegenerateMapError",
    "NonSquarefreeError",
    "SearchBudgetExceededError",
    "VerificationError",
]


class NonSquarefreeError(ValueError):
    """A polynomial required to be squarefree has a repeated factor.

    The offending common factor of f and f' is attached as ``witness`` so
    callers can show it instead of a bare refusal.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class DegenerateExponentError(ValueError):
    """The reduced middle exponent vanished, so the criterion is undefined."""


class DegenerateMapError(ValueError):
    """A substitution collapsed the model below a usable degree."""


class SearchBudgetExceededError(RuntimeError):
    """An enumeration would exceed the configured candidate budget."""


class VerificationError(RuntimeError):
    """A recomputed quantity disagrees with what a certificate claims."""

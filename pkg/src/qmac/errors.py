"""Exception hierarchy for qmac."""

from __future__ import annotations

from typing import TYPE_CHECKING, Any

if TYPE_CHECKING:
    from qmac.algebra.ratexpr import DenFactor


class QmacError(Exception):
    """Base exception for all qmac library errors."""


class CompositionError(QmacError, ValueError):
    """A composition or subset is malformed for the requested view."""


class ZeroDenominatorError(QmacError, ZeroDivisionError):
    """A specialization sends a denominator factor to zero."""

    def __init__(self, factor: DenFactor, assignment: dict[str, Any]) -> None:
        self.factor = factor
        self.assignment = dict(assignment)
        values = ", ".join(f"{k}={v}" for k, v in sorted(self.assignment.items()))
        super().__init__(f"denominator factor {factor} vanishes at {values}")


class CellOutOfDiagramError(QmacError, ValueError):
    """A cell was queried that does not belong to the diagram."""

    def __init__(self, cell: tuple[int, int], heights: tuple[int, ...]) -> None:
        self.cell = cell
        super().__init__(f"cell {tuple(cell)} is not in the diagram with heights {heights}")


class PreconditionViolatedError(QmacError, ValueError):
    """An operation was applied outside its domain (e.g. S not containing V(tau))."""


class SizeLimitExceededError(QmacError):
    """An enumeration was requested above the configured size guard."""

    def __init__(self, n: int, limit: int) -> None:
        self.n = n
        self.limit = limit
        super().__init__(
            f"|gamma| = {n} exceeds the enumeration limit {limit} (raise it explicitly to proceed)"
        )

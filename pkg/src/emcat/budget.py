"""A step counter shared by all enumeration routines.

Every search loop ticks the budget once per node it visits.  When the
budget runs out the search raises SizeBudgetExceeded instead of returning
a truncated answer.
"""
from __future__ import annotations

from .errors import SizeBudgetExceeded

DEFAULT_BUDGET = 2_000_000


class Budget:
    """Mutable countdown of enumeration steps."""

    __slots__ = ("limit", "left", "context")

    def __init__(self, limit: int = DEFAULT_BUDGET, context: str = ""):
        self.limit = limit
        self.left = limit
        self.context = context

    def tick(self, n: int = 1) -> None:
        self.left -= n
        if self.left < 0:
            raise SizeBudgetExceeded(self.limit, self.context)


def as_budget(budget: "int | Budget | None", context: str = "") -> Budget:
    """Coerce an int or None into a Budget; pass an existing Budget through."""
    if budget is None:
        return Budget(DEFAULT_BUDGET, context)
    if isinstance(budget, Budget):
        return budget
    return Budget(int(budget), context)

"""Shared exception types."""


class BudgetError(ValueError):
    """An exact computation was refused because the instance exceeds the
    documented size or work cap (distinct from malformed input)."""

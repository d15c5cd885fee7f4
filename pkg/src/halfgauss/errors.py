"""Shared exception types."""


class BudgetExceededError(RuntimeError):
    """A brute-force path would exceed the configured term budget."""

    def __init__(self, needed: int, budget: int):
        super().__init__(
            f"refusing brute-force evaluation: {needed} terms needed, "
            f"budget is {budget} (raise it via --budget or HG_BUDGET)"
        )
        self.needed = needed
        self.budget = budget


class AperiodicPolynomialError(ValueError):
    """The polynomial violates the periodicity condition required by the fast path."""


class InternalConsistencyError(RuntimeError):
    """An exact internal cross-check failed; indicates a defect, never clamped over."""

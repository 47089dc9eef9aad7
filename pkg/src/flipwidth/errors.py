"""Exception hierarchy shared by all modules."""


class FlipwidthError(Exception):
    """Base class for every error raised by this package."""


class Graph6Error(FlipwidthError, ValueError):
    def __init__(self, message: str, offset: int | None = None):
        self.offset = offset
        if offset is not None:
            message = f"{message} (byte offset {offset})"
        super().__init__(message)


class OrderCapError(FlipwidthError, ValueError):
    """A graph or enumeration request exceeds the configured order cap."""


class BudgetExceeded(FlipwidthError):
    """An exhaustive enumeration would exceed its configured budget."""

    def __init__(self, needed: int, budget: int, what: str = "items"):
        self.needed = needed
        self.budget = budget
        super().__init__(f"refusing: {needed} {what} needed, budget is {budget}")


class InvalidFlipSpec(FlipwidthError, ValueError):
    pass


class WidthViolation(FlipwidthError):
    """A strategy announced a flip with more parts than the declared width."""


class NotDecomposable(FlipwidthError):
    """Strategy synthesis was asked for a graph containing an obstruction."""

    def __init__(self, message: str, witness=None):
        self.witness = witness
        super().__init__(message)


class ConsistencyError(FlipwidthError, AssertionError):
    """An internal cross-check failed; indicates an implementation bug."""


class InvalidTriple(FlipwidthError):
    """No orientation of the bi-join halves removes every cross edge."""

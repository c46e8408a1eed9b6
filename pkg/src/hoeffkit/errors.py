"""Exception types shared across hoeffkit."""


class DomainError(ValueError):
    """An argument lies outside the domain of the operation."""


class PreconditionError(DomainError):
    """An argument is in-domain but violates a stated admissibility window."""

    def __init__(self, message, lower=None, upper=None):
        super().__init__(message)
        self.lower = lower
        self.upper = upper


class DegenerateInputError(DomainError):
    """The input carries no usable information (e.g. every pair coincides)."""


class RangeError(OverflowError):
    """The result cannot be represented in double precision."""


class BudgetExceededError(RuntimeError):
    """An exhaustive enumeration would exceed its configured candidate budget."""

    def __init__(self, required, budget):
        super().__init__(
            f"enumeration needs {required} candidate evaluations, budget is {budget}"
        )
        self.required = required
        self.budget = budget


class ConfigError(ValueError):
    """An experiment configuration is invalid."""

    def __init__(self, field, message):
        super().__init__(f"{field}: {message}")
        self.field = field

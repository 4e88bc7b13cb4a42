"""Exception types shared across the package."""


class TreeArrangeError(Exception):
    """Base class for all errors raised by this package."""


class InvalidInputError(TreeArrangeError):
    """An input value or document violates a documented precondition."""


class InvalidArrangementError(InvalidInputError):
    """An arrangement breaks injectivity, totality or leaf range."""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


class BudgetExceededError(TreeArrangeError):
    """An exact search ran past its node-visit budget."""

    def __init__(self, budget, visits):
        self.budget = budget
        self.visits = visits
        super().__init__(f"search budget exceeded: {visits} visits > budget {budget}")

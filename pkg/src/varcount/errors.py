"""Exception hierarchy shared by all modules."""


class VarcountError(Exception):
    """Base class for every error raised by this package."""


class InputError(VarcountError, ValueError):
    """Bad user input (maps to CLI exit code 1)."""


class NotPrime(InputError):
    pass


class EvenCharacteristic(InputError):
    pass


class ReducibleModulus(InputError):
    pass


class DegreeMismatch(InputError):
    pass


class NotPrimitive(InputError):
    pass


class ZeroHasNoIndex(InputError):
    pass


class ShapeMismatch(InputError):
    pass


class InvalidSystem(InputError):
    """A system that violates the staircase shape; ``violations`` lists why."""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations) or "invalid system")


class DimensionMismatch(InputError):
    pass


class HypothesisViolated(InputError):
    pass


class ParseError(InputError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = f"line {line}, column {column}: " if line is not None else ""
        super().__init__(where + message)


class BudgetExceeded(VarcountError):
    """Brute force would need more evaluations than the configured budget."""

    def __init__(self, required, budget):
        self.required = required
        self.budget = budget
        super().__init__(
            f"brute force needs {required} evaluations, budget is {budget}"
        )

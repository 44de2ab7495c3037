"""Exception hierarchy shared by every package. InputError subclasses mean the caller handed in something
unusable; InternalInvariantViolation subclasses mean a construction step broke its own postcondition."""


class RamseyError(Exception):
    pass


class InputError(RamseyError):
    pass


class NotPrime(InputError):
    pass


class ZeroInverse(InputError):
    pass


class ShapeMismatch(InputError):
    pass


class NotContained(InputError):
    pass


class NotAlternating(InputError):
    def __init__(self, index: int, violation: str):
        super().__init__(f"generator {index} is not alternating: {violation}")
        self.index = index
        self.violation = violation


class IndexOutOfRange(InputError):
    pass


class NotGraph(InputError):
    pass


class TooLarge(InputError):
    pass


class BudgetExceeded(InputError):
    def __init__(self, needed: int, budget: int, what: str = "enumeration"):
        super().__init__(f"{what} needs {needed} steps, budget is {budget}")
        self.needed = needed
        self.budget = budget


class PreconditionFailed(InputError):
    pass


class EvenCharacteristic(InputError):
    pass


class DegreeTooHigh(InputError):
    pass


class InstanceFormatError(InputError):
    def __init__(self, field: str, detail: str, line: int = None):
        where = f"{field} (line {line})" if line is not None else field
        super().__init__(f"{where}: {detail}")
        self.field = field
        self.detail = detail
        self.line = line


class InternalInvariantViolation(RamseyError):
    pass


class ShapeViolation(InternalInvariantViolation):
    pass


class InvariantViolation(InternalInvariantViolation):
    pass


class RankLoss(InternalInvariantViolation):
    pass

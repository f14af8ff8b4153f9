"""Exception types raised across the package."""


class ModuliCountError(Exception):
    pass


class NotPrime(ModuliCountError, ValueError):
    pass


class TooLarge(ModuliCountError, ValueError):
    pass


class FieldMismatch(ModuliCountError, ValueError):
    pass


class DivisionByZero(ModuliCountError, ZeroDivisionError):
    pass


class EmptyTuple(ModuliCountError, ValueError):
    pass


class IndexOutOfRange(ModuliCountError, IndexError):
    pass


class UnsupportedField(ModuliCountError, ValueError):
    pass


class BudgetExceeded(ModuliCountError):
    """The requested enumeration is larger than the allowed budget."""

    def __init__(self, required: int, budget: int, what: str = "tuples"):
        self.required = required
        self.budget = budget
        self.what = what
        super().__init__(f"{what}: {required} required, budget is {budget}")


class InexactDivision(ModuliCountError, ArithmeticError):
    """Laurent division left a nonzero remainder."""

    def __init__(self, dividend, divisor, remainder):
        self.dividend = dividend
        self.divisor = divisor
        self.remainder = remainder
        super().__init__(f"({dividend}) / ({divisor}) leaves remainder {remainder}")

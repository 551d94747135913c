"""Exception types raised across the package."""


class SerrecatError(Exception):
    """Base class for all package errors."""


class Unsolvable(SerrecatError):
    """A congruence system has no solution."""


class InvalidFactors(SerrecatError, ValueError):
    pass


class BaseMismatch(SerrecatError, ValueError):
    """Two objects live over different base rings."""


class NotAnAction(SerrecatError, ValueError):
    pass


class DimMismatch(SerrecatError, ValueError):
    pass


class NotWellDefined(SerrecatError, ValueError):
    """A matrix does not send relations to relations."""


class SearchExhausted(SerrecatError):
    """An exhaustive search hit its documented cap before certifying a result."""


class LiftingPropertyUnverified(SerrecatError):
    pass


class NoWitness(SerrecatError):
    """No subobject witnesses the lifting property for this epimorphism."""


class InputNotExactInQuotient(SerrecatError, ValueError):
    pass


class BudgetExceeded(SerrecatError):
    pass


class NotEllPrimary(SerrecatError, ValueError):
    pass


class FieldMismatch(SerrecatError, ValueError):
    pass


class ParseError(SerrecatError):
    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class ValidationError(SerrecatError):
    pass

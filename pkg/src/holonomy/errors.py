class HolonomyError(Exception):
    """Base class for library errors."""


class DomainError(HolonomyError, ValueError):
    """An argument lies outside the mathematical domain of the operation."""


class UnsupportedExpression(HolonomyError, ValueError):
    pass


class InconsistentInput(HolonomyError, ValueError):
    """Numeric data disagrees with the exact data it was supplied with."""


class Undecidable(HolonomyError):
    """The input carries no exact information that would settle the question."""


class PrecisionError(HolonomyError, ArithmeticError):
    """A numeric decision landed too close to its tolerance; retry at higher precision."""


class NoAxisError(HolonomyError, ValueError):
    pass


class DegenerateCase(HolonomyError):
    pass


class BudgetError(HolonomyError):
    """Enumeration exceeded its budget; ``partial`` holds what was computed."""

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial

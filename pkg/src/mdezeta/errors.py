"""Exception hierarchy shared by all evaluators."""


class MDEError(Exception):
    """Base class for evaluator failures."""


class DomainError(MDEError, ValueError):
    """Argument outside the domain of the requested function or routine."""


class PoleError(DomainError):
    """Evaluation requested at a pole (s=1, Gamma poles, quadrature nodes)."""


class CharacterError(DomainError):
    """Value table is not a Dirichlet character, or not primitive when required."""


class BudgetExceeded(MDEError):
    """A reference series would need more terms than its budget allows."""


class PrecisionError(MDEError, ArithmeticError):
    """Internal assertion: a series failed to reach the working precision."""

"""Exception types raised across the package."""


class NonDiophantineError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(NonDiophantineError, ValueError):
    """A value lies outside the domain of the active bijection."""


class ContextMismatch(NonDiophantineError, TypeError):
    """Two upper reals from different bijection contexts were combined."""


class DivisionByZeroPrime(NonDiophantineError, ZeroDivisionError):
    """Division by the additive neutral element 0'."""


class OverflowToBoundary(NonDiophantineError, ArithmeticError):
    """A lower-real intermediate has no representable preimage inside the domain."""


class MonotonicityError(NonDiophantineError, ValueError):
    """A custom bijection failed the monotonicity probe."""


class BijectionSpecError(NonDiophantineError, ValueError):
    """A bijection spec string could not be parsed."""


class NonFiniteDerivative(NonDiophantineError, ArithmeticError):
    pass


class QuadratureFailure(NonDiophantineError, ArithmeticError):
    pass


class SingularMetric(NonDiophantineError, ArithmeticError):
    pass


class SourceAtObserver(NonDiophantineError, ValueError):
    pass


class NegativeRatio(NonDiophantineError, ValueError):
    pass

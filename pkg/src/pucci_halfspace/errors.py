"""Exception types shared across the package."""


class PucciError(Exception):
    """Base class for all errors raised by this package."""


class InputError(PucciError, ValueError):
    """Malformed or inconsistent arguments."""


class DomainError(PucciError, ValueError):
    """A point or parameter lies outside the domain of a function."""


class PreconditionError(PucciError, ValueError):
    """A mathematical precondition of an operation does not hold."""


class ConsistencyError(PucciError, ArithmeticError):
    """An identity that holds analytically failed numerically."""


class NumericalError(PucciError, RuntimeError):
    """An iterative method failed to converge or bracket a root."""


class InvalidTrajectoryError(NumericalError):
    """A shooting trajectory left the admissible region."""

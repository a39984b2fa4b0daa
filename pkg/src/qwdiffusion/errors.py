"""Exception hierarchy shared across the package."""


class WalkError(Exception):
    """Base class for every error raised by qwdiffusion."""


class ValidationError(WalkError, ValueError):
    """An argument violates a precondition."""


class CapacityError(WalkError):
    """A walker state has no room left in its lattice window."""


class ConsistencyError(WalkError, ArithmeticError):
    """A numerical result fell outside its floating-point noise budget."""


class DivergenceError(ValidationError):
    """A quantity is infinite at the requested argument."""

"""Exception hierarchy shared by all xyzchain modules."""


class XYZChainError(Exception):
    """Base class for every error raised by this package."""


class DomainError(XYZChainError, ValueError):
    """An argument lies outside the domain where the quantity is defined."""


class TruncationError(XYZChainError, ArithmeticError):
    """A series did not reach its tolerance within the allowed number of terms."""

    def __init__(self, message, last_term=None):
        super().__init__(message)
        self.last_term = last_term


class PoleError(XYZChainError, ZeroDivisionError):
    """Evaluation hit (or came too close to) a zero of a denominator."""


class RealityError(XYZChainError, ValueError):
    """A quantity expected to be real carried a non-negligible imaginary part."""


class ConsistencyError(XYZChainError, AssertionError):
    """Two independent routes to the same quantity disagreed."""


class ConvergenceError(XYZChainError, RuntimeError):
    """An iterative solver stopped before meeting its tolerance."""

    def __init__(self, message, residual=None, state=None):
        super().__init__(message)
        self.residual = residual
        self.state = state


class DegenerateSeedError(ConvergenceError):
    """Newton iteration met a singular Jacobian or collapsed roots."""


class MemoryBudgetError(XYZChainError, MemoryError):
    """The requested Hilbert space does not fit the configured memory budget."""

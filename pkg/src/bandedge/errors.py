"""Exception types raised by the solvers.

Every numerical failure derives from :class:`NumericalError` so the command
line front end can map it to a single exit status.
"""


class BandEdgeError(Exception):
    """Base class for all package errors."""


class ConfigError(BandEdgeError, ValueError):
    """Invalid user-supplied parameters or run configuration."""


class NumericalError(BandEdgeError, ArithmeticError):
    """A computation could not produce a trustworthy result."""


class LeadingZero(NumericalError):
    pass


class NonConvergence(NumericalError):
    def __init__(self, message: str, residuals=None):
        super().__init__(message)
        self.residuals = residuals


class DegenerateRoots(NumericalError):
    pass


class OverflowDetected(NumericalError):
    pass


class UndefinedLimit(NumericalError):
    pass


class SingularAtZero(NumericalError):
    pass


class NotPointwise(NumericalError):
    pass


class BranchCut(NumericalError):
    pass


class StepTooLarge(ConfigError):
    pass


class NonFinite(NumericalError):
    pass

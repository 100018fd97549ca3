"""Exception types shared across the package."""


class NqhoError(Exception):
    """Base class for all package errors."""


class ConfigurationError(NqhoError, ValueError):
    """Invalid parameters, grid or run configuration.

    ``param`` names the offending setting when there is a single culprit.
    """

    def __init__(self, message, param=None):
        super().__init__(message)
        self.param = param


class NumericalError(NqhoError, FloatingPointError):
    """Non-finite values appeared during integration.

    ``step`` is the step index at which the field stopped being finite and
    ``member`` the ensemble member index, when known.
    """

    def __init__(self, message, step=None, member=None):
        super().__init__(message)
        self.step = step
        self.member = member

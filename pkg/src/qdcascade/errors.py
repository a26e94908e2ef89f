"""Exception hierarchy shared by the simulation core, service and CLI.

The split mirrors the process exit codes: parameter problems exit 1,
numerical-validity problems exit 2, I/O problems exit 3.
"""


class CascadeError(Exception):
    """Base class for all errors raised by this package."""


class ParameterError(CascadeError):
    """Invalid physical parameter, config key, or argument ordering."""


class NumericalError(CascadeError):
    """A computation produced values outside its validity contract."""


class DegenerateGateError(NumericalError):
    """The detection gate captured no signal (zero or negative trace)."""


class XFormError(NumericalError):
    """A matrix expected to be in X form (only anti-diagonal corner
    coherences) is not."""

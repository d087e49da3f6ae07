"""Exception hierarchy shared by every module of the package."""


class CotiltError(Exception):
    """Base class for all errors raised by cotilt."""


class InputError(CotiltError, ValueError):
    """Malformed or foreign input: wrong ring, non-prime, bad JSON shape."""


class ConfigurationError(CotiltError):
    """A ring descriptor lacks data an operation needs (e.g. Bass data)."""


class PreconditionError(CotiltError):
    """An operation was called on data violating its precondition.

    ``violations`` carries the offending verdict entries when available.
    """

    def __init__(self, message, violations=()):
        super().__init__(message)
        self.violations = tuple(violations)


class UnsupportedError(CotiltError):
    """The requested computation falls outside the supported finite classes."""


class InvariantError(CotiltError, RuntimeError):
    """An internal result violated a guaranteed invariant (an implementation bug)."""

    def __init__(self, message, violations=()):
        super().__init__(message)
        self.violations = tuple(violations)

"""Exception hierarchy.

Input problems raise ``ValueError`` subclasses; exhausting a search budget or
a size guard raises ``CapExceeded`` so callers can tell the two apart.
"""


class BramblekitError(Exception):
    pass


class PreconditionError(BramblekitError, ValueError):
    """A documented precondition of an operation does not hold."""


class CapExceeded(BramblekitError):
    """A search cap or size guard was hit before an answer was certified."""


class GuardExceeded(CapExceeded):
    """Input is larger than an exhaustive routine is allowed to handle."""

"""Exception hierarchy.

The CLI maps :class:`InputError` to exit status 2, :class:`PreconditionError`
to 3 and :class:`InvariantBreach` to 4.
"""


class JumpLociError(Exception):
    pass


class InputError(JumpLociError, ValueError):
    """Malformed or unparseable input."""


class PreconditionError(JumpLociError, ValueError):
    """An operation was called outside its contract."""


class VariantMismatchError(PreconditionError):
    """Scalars of different variants were mixed in one matrix."""


class IncompleteInputError(PreconditionError):
    """A degree needed for the computation was not supplied."""


class NotFlatError(PreconditionError):
    """A connection that must satisfy Maurer-Cartan does not."""


class InvariantBreach(JumpLociError, AssertionError):
    """An internal consistency check failed; this is a bug."""

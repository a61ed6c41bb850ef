"""Exception types shared across the package."""


class SfockError(Exception):
    """Base class for all errors raised by this package."""


class DimensionError(SfockError, ValueError):
    """Mismatched variable counts, ragged matrices or out-of-range indices."""


class RejectedInput(SfockError, ValueError):
    """Input violates an operation's precondition (non-quantizable observable, bad spec, ...)."""


class ConsistencyError(SfockError, RuntimeError):
    """An internal identity that must hold exactly was violated."""

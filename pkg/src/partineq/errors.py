"""Exception hierarchy shared by all modules."""


class PartineqError(Exception):
    """Base class for every error raised by the package."""


class InvalidSpec(PartineqError, ValueError):
    """Malformed sequence specification or criterion input."""


class DomainError(PartineqError, ValueError):
    """Index outside the domain of a sequence or operation."""


class InternalInconsistency(PartineqError, RuntimeError):
    """Two independent algorithms disagreed. Always a bug."""


class PrecisionExhausted(PartineqError, ArithmeticError):
    """An interval comparison stayed unresolved at the precision cap."""

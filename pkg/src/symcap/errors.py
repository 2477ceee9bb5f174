"""Exception hierarchy shared by all symcap modules."""


class SymcapError(Exception):
    """Base class for all package errors."""


class DomainError(SymcapError):
    """An even root or fractional power of a provably negative quantity."""


class PrecisionExhausted(SymcapError):
    """A comparison or floor could not be decided within the precision budget.

    Raised instead of guessing; callers may retry with a larger budget.
    """


class InvalidInput(SymcapError, ValueError):
    """Arguments violate a documented precondition."""


class HypothesisViolated(SymcapError):
    """A certificate builder's hypothesis fails for the given parameters."""


class ResourceLimit(SymcapError):
    """A search or reduction exceeded its configured node budget."""


class VerificationFailed(SymcapError):
    """An internal consistency check failed; indicates a bug, not bad input."""

"""Shared exception types.  Error messages reuse the phrases callers match on."""


class SemicocycleError(Exception):
    """Base class for all library errors."""


class PreconditionError(SemicocycleError):
    """An operation was called outside its stated precondition."""


class DepthInsufficient(SemicocycleError):
    """Ladder depth (or stored length) cannot support the request."""


class CapacityExhausted(SemicocycleError):
    """An odometer gap holds too few dyadic values for a required insertion."""


class ResolutionExceeded(SemicocycleError):
    """Binary profile queried below the deepest stored ladder cell."""


class SearchExhausted(SemicocycleError):
    """A bounded witness/anchor search ran out of budget."""


class ConfigError(SemicocycleError):
    """Malformed run configuration."""

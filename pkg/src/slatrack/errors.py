"""Exception types shared across the package."""


class SlaTrackError(Exception):
    """Base class for all slatrack errors."""


class ValidationError(SlaTrackError):
    """Input data violates a field constraint or record invariant."""


class ConfigurationError(SlaTrackError):
    """Priority matrix or other configuration is unusable."""


class TransitionError(SlaTrackError):
    """Requested lifecycle move is not allowed from the current status."""


class NotFoundError(SlaTrackError):
    """Lookup by id found nothing."""

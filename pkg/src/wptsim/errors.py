"""Exception types raised across the package."""


class WptError(ValueError):
    """Base class for invalid inputs to wptsim routines."""


class DomainError(WptError):
    """An argument lies outside the domain where the operation is defined."""


class DegenerateChannelError(WptError):
    """The channel carries no usable gain for the requested design."""


class MomentInconsistencyError(WptError):
    """Fourth moment smaller than the squared second moment."""


class ConfigError(WptError):
    """Malformed experiment configuration.

    ``key`` names the offending entry so callers can point at it.
    """

    def __init__(self, key: str, message: str):
        self.key = key
        super().__init__(f"{key}: {message}")

"""Exception types shared across the package."""


class ConfigurationError(ValueError):
    """Invalid parameters or unsupported configuration."""


class DomainError(ValueError):
    """A probability or rate argument lies outside the admissible domain."""


class DegenerateChannelError(ValueError):
    """The channel is noiseless or fully noisy; use the closed form instead."""


class BracketError(ValueError):
    """A root-finding bracket does not straddle the target."""

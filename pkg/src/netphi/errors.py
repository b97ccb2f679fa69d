"""Exception types shared across the toolkit."""


class NetphiError(Exception):
    """Base class for all toolkit errors."""


class ConfigError(NetphiError):
    """Invalid user-supplied configuration or arguments."""


class NetworkFormatError(NetphiError):
    """Network file failed to parse or violated its declared invariants."""


class InstabilityError(NetphiError):
    """Dynamics are at or beyond the critical coupling; no stationary solution.

    Carries the offending spectral radius.
    """

    def __init__(self, spectral_radius, message=None):
        self.spectral_radius = spectral_radius
        super().__init__(
            message or f"unstable dynamics: spectral radius {spectral_radius:.6g} >= 1"
        )


class CriticalityError(NetphiError):
    """A linear system became singular because the coupling sits on a pole."""


class DegeneracyError(NetphiError):
    """A covariance matrix lost positive definiteness beyond tolerance."""


class ReconstructionError(NetphiError):
    """Exact rational reconstruction exceeded its degree cap."""

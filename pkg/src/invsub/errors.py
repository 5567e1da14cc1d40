"""Exception types shared across the package."""


class InvsubError(Exception):
    """Base class for all package-specific errors."""


class DomainError(InvsubError, ValueError):
    """Argument outside the mathematical domain of an operation."""


class BranchCutError(DomainError):
    """Complex argument on the closed negative real axis."""


class QuadratureError(InvsubError):
    """Numerical integration failed to converge."""


class InversionInstabilityError(InvsubError):
    """Independent Laplace-inversion methods disagree beyond tolerance."""


class TruncationError(InvsubError):
    """Tail-mass certificate could not be achieved within the allowed range."""


class SamplerUnavailableError(InvsubError):
    """No closed-form increment sampler exists for the requested kernel."""


class HorizonError(InvsubError):
    """Simulation horizon exhausted before first passage."""

    def __init__(self, msg, censored_fraction=None):
        super().__init__(msg)
        self.censored_fraction = censored_fraction


class ClassificationError(InvsubError):
    """Kernel's small-lambda behavior falls outside the supported classes."""

    def __init__(self, msg, estimated_exponent=None):
        super().__init__(msg)
        self.estimated_exponent = estimated_exponent


class NotInPaperError(InvsubError):
    """Requested (class, model, dimension) combination has no predicted rate."""


class ConfigError(InvsubError):
    """Experiment configuration failed validation."""

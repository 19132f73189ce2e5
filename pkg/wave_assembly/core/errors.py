"""Exception hierarchy for wave-assembly."""


class WaveAssemblyError(Exception):
    """Base class for every error raised by wave-assembly."""


class ValidationError(WaveAssemblyError, ValueError):
    """Raised when an input violates a documented precondition."""


class DimensionError(ValidationError):
    """Raised when points, wavevectors or coefficient matrices disagree on dimension."""


class UnsupportedDimensionError(ValidationError):
    """Raised when an operation is only defined for a subset of dimensions."""


class FitError(ValidationError):
    """Raised when a homography cannot be fitted to the given correspondences."""


class MinimaError(WaveAssemblyError):
    """Base class for runtime failures while locating minima."""


class DivergenceError(MinimaError):
    """Raised when a Newton iteration leaves the analysis box."""


class SaddleError(MinimaError):
    """Raised when an iteration converges to a point that is not a minimum."""

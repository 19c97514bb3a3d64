"""Exception hierarchy. Every error raised by the package derives from GBSError."""


class GBSError(Exception):
    pass


class DimensionError(GBSError, ValueError):
    """Matrix/vector shapes are incompatible with the operation."""


class DomainError(GBSError, ValueError):
    """An argument lies outside the mathematical domain of the operation."""


class InvalidStateError(GBSError, ValueError):
    """Covariance matrix does not describe a physical Gaussian state."""


class SingularMatrixError(GBSError, ArithmeticError):
    """Raised when LU pivoting finds a pivot below the singularity threshold."""

    def __init__(self, message: str, pivot: float):
        super().__init__(message)
        self.pivot = pivot


class ParseError(GBSError, ValueError):
    """Input file or command-line value could not be parsed."""


class ResourceError(GBSError, RuntimeError):
    """A requested computation exceeds the configured size caps."""


class RankDeficiencyWarning(UserWarning):
    """More photons requested than the rank of the sampling matrix supports."""

"""Exception and warning types shared across the package."""


class QFisherError(Exception):
    """Base class for all errors raised by this package."""


class NonIntegrable(QFisherError, ValueError):
    """Requested density has no finite normalization on R^n."""


class GridTooCoarse(QFisherError, ValueError):
    """Grid resolution is too low to represent the requested density."""


class DegenerateEscort(QFisherError, ValueError):
    """Escort normalization integral underflows or is not finite."""


class IncompatibleFactor(QFisherError, ValueError):
    """Coarse-graining factor does not divide the point count."""


class SupportMismatch(QFisherError, ValueError):
    """Numerator is nonzero where the reference density vanishes."""


class NonConvergent(QFisherError, RuntimeError):
    """Extrapolation sequence failed its Cauchy criterion."""


class JacobianSingular(QFisherError, RuntimeError):
    """Reparameterization Jacobian is singular or not finite."""


class SingularFisherMatrix(QFisherError, RuntimeError):
    """Fisher information matrix cannot be inverted reliably."""


class UnstableStep(QFisherError, RuntimeError):
    """Explicit diffusion step produced negative density values."""


class ConfigError(QFisherError, ValueError):
    """Invalid or unknown configuration for the command-line tool."""


class TruncationWarning(UserWarning):
    """Moment integrand carries non-negligible weight at the grid boundary."""


class BoundaryMassWarning(UserWarning):
    """Density is not negligible at the grid boundary."""


class AliasingWarning(UserWarning):
    """Spectral tail mass suggests the transform is under-resolved."""

"""Exception types shared across the package."""


class ConfeigError(Exception):
    """Base class for all library-specific errors."""


class DomainError(ConfeigError):
    """An argument lies outside the mathematical domain of an operation."""


class PoleError(ConfeigError):
    """Map evaluation hit a pole or produced a non-finite value."""


class InfiniteNorm(ConfeigError):
    """A bound that needs a finite sup-norm received a non-finite one."""


class QuadratureDivergence(ConfeigError):
    """Successive quadrature refinements disagree badly; the integral is
    most likely divergent or far outside the rule's reach."""


class RasterError(ConfeigError):
    """Rasterization produced an empty cell set."""


class ConvergenceError(ConfeigError):
    """The eigensolver failed its residual contract within the iteration
    budget."""


class AreaMismatch(ConfeigError):
    """The spectral-gap estimate requires an image of area pi."""


class NoValidBound(ConfeigError):
    """No valid eigenvalue bound was available for selection."""


class SpecFormatError(ConfeigError):
    """A domain-spec document could not be parsed."""

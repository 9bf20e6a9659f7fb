"""Exception types raised across the toolkit."""


class RobustSvdError(Exception):
    """Base class for all errors raised by this package."""


class DimensionError(RobustSvdError, ValueError):
    """Shapes or requested component counts are inconsistent."""


class RankError(RobustSvdError, ValueError):
    """Requested more components than the numerical rank supports."""


class DegenerateInputError(RobustSvdError, ValueError):
    """Input is rank deficient or otherwise numerically degenerate."""


class DegenerateDirectionError(DegenerateInputError):
    """A direction vector has no usable entries for the scale search."""


class SingularScaleError(DegenerateInputError):
    """A scale factor is too close to zero to invert."""


class CapacityError(RobustSvdError, ValueError):
    """Problem size exceeds a hard guard for an exhaustive routine."""


class ContractViolationError(RobustSvdError, ValueError):
    """A caller-supplied argument violates a documented precondition."""


class ConvergenceError(RobustSvdError, RuntimeError):
    """An underlying iterative numerical routine failed to converge."""


class DataError(RobustSvdError, ValueError):
    """A data file could not be parsed or fails validation."""

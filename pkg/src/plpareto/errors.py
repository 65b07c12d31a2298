"""Exception types shared across the package."""


class PlparetoError(Exception):
    """Base class for all package-specific errors."""


class NegativeCoordinate(PlparetoError):
    """A demand coordinate was negative."""


class OutOfDomain(PlparetoError):
    """An abscissa fell outside the function's domain."""


class NotPSD(PlparetoError):
    """An ellipse shape matrix was not symmetric positive semi-definite."""


class BranchMismatch(PlparetoError):
    """A protection level was passed to the wrong compatible-ratio branch."""


class NoSolution(PlparetoError):
    """The balancing equation has no root on the candidate interval."""


class TargetOutOfRange(PlparetoError):
    """A robustness target fell outside the achievable range."""


class InfeasibleTarget(PlparetoError):
    """The requested consistency target exceeds the maximum achievable one."""


class EmptyCandidateSet(PlparetoError):
    """Vertex-pair enumeration produced no balancing candidates."""

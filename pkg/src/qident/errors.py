"""Exception hierarchy shared by all qident modules."""


class QidentError(Exception):
    """Base class for all library errors."""


class SizeLimitError(QidentError):
    """A requested computation exceeds the configured size cap."""


class DimensionMismatchError(QidentError):
    """Inputs disagree on particle count, basis size, or mode count."""


class ExclusionError(QidentError):
    """A Pauli-forbidden configuration produced an identically zero state."""


class ZeroVectorError(QidentError):
    """An operation that needs a nonzero vector received (numerically) zero."""


class PhysicsDomainError(QidentError):
    """Parameters outside the physical domain (e.g. bosonic mu >= E_0)."""


class ConvergenceError(QidentError):
    """An iterative solver failed to reach its residual target."""


class UnsupportedStatisticsError(QidentError):
    """The requested statistics is not defined for this operation."""

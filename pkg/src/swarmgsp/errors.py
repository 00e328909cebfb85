"""Exception types raised across the toolkit."""


class SwarmGspError(Exception):
    """Base class for all toolkit errors."""


class DimensionMismatch(SwarmGspError):
    """Array shapes disagree with the graph or basis size."""


class ZeroDegree(SwarmGspError):
    """A vertex has zero total edge weight; normalized Laplacian undefined."""


class ConvergenceFailure(SwarmGspError):
    """The eigensolver failed to converge."""


class IndexOutOfRange(SwarmGspError):
    """A spectral pass index exceeds the number of vertices."""


class DegeneratePositions(SwarmGspError):
    """All agent positions coincide; kernel bandwidth would be zero."""


class ZeroVelocity(SwarmGspError):
    """An agent has zero velocity; normalized-velocity signal undefined."""


class NumericalBlowup(SwarmGspError):
    """Simulation state left the sane range; the step size is unstable."""


class UnknownCase(SwarmGspError):
    """Case id outside the five defined detection scenarios."""


class EmptyInput(SwarmGspError):
    """An operation received an empty collection."""


class SingleClass(SwarmGspError):
    """ROC analysis needs at least one positive and one negative label."""


class ConfigError(SwarmGspError):
    """A configuration file or value is invalid."""

"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class RegimeError(ValueError):
    """Parameters do not fall in the regime required by a bound or solver."""


class QuadratureError(RuntimeError):
    """Adaptive quadrature exhausted its subdivision budget above tolerance."""


class ConvergenceError(RuntimeError):
    """An iterative solver failed to reach its tolerance."""


class GridError(ValueError):
    """Fields live on incompatible grids, or a grid is malformed."""

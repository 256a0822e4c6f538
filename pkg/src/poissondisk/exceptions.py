"""Exception and warning classes raised by poissondisk."""


class DomainError(ValueError):
    """An input lies outside the region where an operation is defined."""


class KernelSingularityError(DomainError):
    """Two arguments of a kernel coincide (within the collision epsilon)."""


class SenseReversalError(ValueError):
    """A mapping was required to be sense-preserving but has J_f <= 0."""


class DegeneratePointError(ValueError):
    """The minimal stretch of a mapping vanishes at a grid node."""


class QuadratureConvergenceError(RuntimeError):
    """Successive quadrature refinements disagree by more than the tolerance."""


class ResolutionWarning(UserWarning):
    """Evaluation point too close to the circle for the boundary resolution."""


class AliasingWarning(UserWarning):
    """Boundary samples carry energy near the Nyquist frequency."""

"""Exception types shared across the toolkit."""


class ConvergenceFailure(Exception):
    """A root solve did not reach the required residual tolerance."""


class NoConvergence(Exception):
    """Shooting refinement did not converge within the iteration budget."""


class BoundaryTooClose(Exception):
    """A contour sample saw an argument jump too large even after refinement,
    which indicates an eigenvalue sits too close to the rectangle boundary."""


class GridTooCoarse(Exception):
    """Argument increments on the sampling grid stayed above the safe bound
    after the allowed number of refinements."""


class CFLViolation(Exception):
    """Time step does not match grid_spacing / S (unit CFL is required)."""


class DegenerateWindow(Exception):
    """The decay-fit window contains underflowed norms."""


class ZeroState(Exception):
    """Operation undefined for an identically zero state."""

"""Exception types shared across the toolkit.

Every certification failure carries enough data to diagnose the run that
produced it; none of these are ever swallowed silently.
"""


class LabyrinthError(Exception):
    """Base class for all toolkit errors."""


# geometry
class DegenerateSimplex(LabyrinthError):
    """Simplex vertices are affinely dependent within tolerance."""


class OrientationUndefined(LabyrinthError):
    """Hyperplane through (or too close to) the origin: no outward side."""


class ProjectionUndefined(LabyrinthError):
    """Radial projection of the zero vector."""


# lattice
class GenericityFailure(LabyrinthError):
    """Lattice is not in general position (cospherical cells, tiny margins)."""

    def __init__(self, message, offenders=None):
        super().__init__(message)
        self.offenders = offenders


class ShiftSearchFailure(LabyrinthError):
    """No shift family with certified positive separation within budget."""


class MeshTooCoarse(LabyrinthError):
    """Certified separation bound came out non-positive; refine the mesh."""

    def __init__(self, message, mu_sampled):
        super().__init__(message)
        self.mu_sampled = mu_sampled


# lifting
class ChartDomainExceeded(LabyrinthError):
    """Point outside the graph chart's domain |x| < r."""


class ChartTooLarge(LabyrinthError):
    """Chart base ball too large for the closed-form gradient bound."""


class TauTooLarge(LabyrinthError):
    """Kept simplices fail to cover the middle chart ball."""


class ConvexityFailure(LabyrinthError):
    """Lifted surface is not convex: some vertex lies on the wrong side.

    Carries the offending (facet index, vertex index, excess) triples.
    """

    def __init__(self, message, pairs):
        super().__init__(message)
        self.pairs = pairs


# barrier
class PlanInfeasible(LabyrinthError):
    """No (ell, tau) satisfying the plan identities within budget."""


# runge
class DegreeExhausted(LabyrinthError):
    """Degree schedule ran out before the certificate validated."""

    def __init__(self, message, best_t=None):
        super().__init__(message)
        self.best_t = best_t


# potential
class SlabGeometryError(LabyrinthError):
    """Slab width inconsistent with the layer geometry."""


class TelescopeBudgetError(LabyrinthError):
    """A telescoping stage violated its smallness budget."""


# pullback
class EmptyShellSample(LabyrinthError):
    """Rejection sampling of a map shell produced no accepted points."""


# cli
class ConfigError(LabyrinthError):
    """Run configuration failed validation."""

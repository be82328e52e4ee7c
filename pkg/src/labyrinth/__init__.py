"""Labyrinth barriers in spherical shells, with certified length bounds
and telescoped polynomial potentials.

The toolkit builds, at desk scale, convex polyhedral barrier sets inside
spherical shells, certifies that short crossing paths must hit them, and
synthesizes polynomials that are uniformly small on inner balls while their
real part is large on the barrier pieces.
"""

__version__ = "0.1.0"

from . import errors  # noqa: F401

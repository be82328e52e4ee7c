"""Dimension-generic Euclidean primitives: simplices, spheres, hyperplanes, shells.

All arithmetic is 64-bit floating point with explicit tolerances.  The
lattices consumed downstream are deliberately perturbed into general
position, so every configuration we certify sits a measurable margin away
from degeneracy and exact predicates are unnecessary.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateSimplex, OrientationUndefined, ProjectionUndefined

DEFAULT_TOL = 1e-9


def as_vector(x, dim: int | None = None) -> np.ndarray:
    """Validate and return a finite 1-D float vector."""
    v = np.asarray(x, dtype=float)
    if v.ndim != 1:
        raise ValueError(f"expected a 1-D vector, got shape {v.shape}")
    if not np.all(np.isfinite(v)):
        raise ValueError("vector has non-finite entries")
    if dim is not None and v.shape[0] != dim:
        raise ValueError(f"expected dimension {dim}, got {v.shape[0]}")
    return v


@dataclass(frozen=True)
class Simplex:
    """A k-simplex given by its k+1 vertices (rows), embedded in R^m."""

    vertices: np.ndarray
    tol: float = DEFAULT_TOL

    def __post_init__(self):
        v = np.asarray(self.vertices, dtype=float)
        if v.ndim != 2:
            raise ValueError("vertices must be a (k+1, m) array")
        if not np.all(np.isfinite(v)):
            raise ValueError("simplex has non-finite vertices")
        object.__setattr__(self, "vertices", v)
        k, m = v.shape[0] - 1, v.shape[1]
        if k > m:
            raise ValueError(f"{k}-simplex cannot embed in R^{m}")
        if k > 0:
            e = self.edge_matrix()
            s = np.linalg.svd(e, compute_uv=False)
            scale = max(s[0], 1.0)
            if s[-1] <= self.tol * scale:
                raise DegenerateSimplex(
                    f"{k}-simplex in R^{m} is degenerate (sigma_min={s[-1]:.3g})"
                )

    @property
    def dim(self) -> int:
        return self.vertices.shape[0] - 1

    @property
    def ambient_dim(self) -> int:
        return self.vertices.shape[1]

    def edge_matrix(self) -> np.ndarray:
        """Rows v_i - v_0 for i = 1..k."""
        return self.vertices[1:] - self.vertices[0]

    @property
    def centroid(self) -> np.ndarray:
        return self.vertices.mean(axis=0)

    def volume(self) -> float:
        """k-dimensional measure (via the Gram determinant)."""
        if self.dim == 0:
            return 0.0
        e = self.edge_matrix()
        det = np.linalg.det(e @ e.T)
        return float(np.sqrt(max(det, 0.0)) / _factorial(self.dim))


def _factorial(k: int) -> int:
    out = 1
    for i in range(2, k + 1):
        out *= i
    return out


@dataclass(frozen=True)
class Sphere:
    center: np.ndarray
    radius: float

    def __post_init__(self):
        object.__setattr__(self, "center", as_vector(self.center))
        if not (self.radius > 0.0):
            raise ValueError("sphere radius must be positive")


@dataclass(frozen=True)
class Hyperplane:
    """{x : normal . x = offset} with |normal| = 1."""

    normal: np.ndarray
    offset: float

    def __post_init__(self):
        n = as_vector(self.normal)
        nn = float(np.linalg.norm(n))
        if abs(nn - 1.0) > 1e-7:
            raise ValueError("hyperplane normal must be unit length")
        object.__setattr__(self, "normal", n)

    def side(self, x) -> float:
        """Signed value normal.x - offset (positive on the outward side)."""
        return float(np.dot(self.normal, np.asarray(x, dtype=float)) - self.offset)

    def heights(self, points: np.ndarray) -> np.ndarray:
        """normal.x for an array of points (rows)."""
        return np.asarray(points, dtype=float) @ self.normal


@dataclass(frozen=True)
class ShellInterval:
    """Radius interval (lo, hi] by default; closure flags per endpoint."""

    lo: float
    hi: float
    closed_lo: bool = False
    closed_hi: bool = True

    def __post_init__(self):
        if not (0.0 < self.lo < self.hi):
            raise ValueError(f"need 0 < lo < hi, got ({self.lo}, {self.hi})")

    @property
    def width(self) -> float:
        return self.hi - self.lo

    def contains(self, t: float, tol: float = 0.0) -> bool:
        lo_ok = t >= self.lo - tol if self.closed_lo else t > self.lo - tol
        hi_ok = t <= self.hi + tol if self.closed_hi else t < self.hi + tol
        return bool(lo_ok and hi_ok)

    def contains_points(self, points: np.ndarray, tol: float = 0.0) -> np.ndarray:
        r = np.linalg.norm(np.asarray(points, dtype=float), axis=-1)
        lo = (r >= self.lo - tol) if self.closed_lo else (r > self.lo - tol)
        hi = (r <= self.hi + tol) if self.closed_hi else (r < self.hi + tol)
        return lo & hi


@dataclass(frozen=True)
class SphericalBox:
    """Radial product of a boundary cap with a radius interval.

    The cap is {w on the unit sphere : |w - cap_center| < cap_radius} in the
    chord metric, so cap_radius <= 2.
    """

    cap_center: np.ndarray
    cap_radius: float
    shell: ShellInterval

    def __post_init__(self):
        c = as_vector(self.cap_center)
        if abs(np.linalg.norm(c) - 1.0) > 1e-9:
            raise ValueError("cap center must be a unit vector")
        if not (0.0 < self.cap_radius <= 2.0):
            raise ValueError("cap radius must lie in (0, 2]")
        object.__setattr__(self, "cap_center", c)

    def contains(self, x, tol: float = 0.0) -> bool:
        x = as_vector(x, dim=self.cap_center.shape[0])
        r = float(np.linalg.norm(x))
        if r == 0.0 or not self.shell.contains(r, tol=tol):
            return False
        return float(np.linalg.norm(x / r - self.cap_center)) <= self.cap_radius + tol


# ---------------------------------------------------------------------------
# operations


def circumsphere(s: Simplex) -> Sphere:
    """Circumsphere of a k-simplex, solved within its affine hull.

    For a full-dimensional simplex this is the ordinary circumsphere; for a
    k-simplex in R^{k+1} the center lies in the simplex's affine hull.
    """
    e = s.edge_matrix()
    gram = 2.0 * (e @ e.T)
    rhs = np.einsum("ij,ij->i", e, e)
    try:
        y = np.linalg.solve(gram, rhs)
    except np.linalg.LinAlgError as exc:
        raise DegenerateSimplex("circumsphere of a degenerate simplex") from exc
    center = s.vertices[0] + y @ e
    dists = np.linalg.norm(s.vertices - center, axis=1)
    radius = float(dists.mean())
    if radius <= 0.0 or np.max(np.abs(dists - radius)) > 1e-7 * max(radius, 1.0):
        raise DegenerateSimplex("circumsphere residual too large")
    return Sphere(center=center, radius=radius)


def supporting_hyperplane(s: Simplex, tol: float = DEFAULT_TOL) -> Hyperplane:
    """Hyperplane through a d-simplex in R^{d+1}, oriented away from the origin."""
    if s.dim + 1 != s.ambient_dim:
        raise ValueError(
            f"need a {s.ambient_dim - 1}-simplex in R^{s.ambient_dim}, got dim {s.dim}"
        )
    e = s.edge_matrix()
    _, _, vt = np.linalg.svd(e)
    normal = vt[-1]
    offset = float(np.dot(normal, s.vertices[0]))
    if offset < 0.0:
        normal, offset = -normal, -offset
    scale = float(np.max(np.linalg.norm(s.vertices, axis=1)))
    if offset <= tol * max(scale, 1.0):
        raise OrientationUndefined("affine hull passes through the origin")
    return Hyperplane(normal=normal, offset=offset)


def radial_projection(x) -> np.ndarray:
    """x / |x| onto the unit sphere."""
    v = as_vector(x)
    n = float(np.linalg.norm(v))
    if n == 0.0:
        raise ProjectionUndefined("cannot radially project the origin")
    return v / n


def drop_last(x) -> np.ndarray:
    """Forget the last coordinate: (x_1, ..., x_m) -> (x_1, ..., x_{m-1})."""
    v = np.asarray(x, dtype=float)
    if v.shape[-1] < 2:
        raise ValueError("need at least 2 coordinates")
    return v[..., :-1]


def point_in_simplex(x, s: Simplex, tol: float = 1e-9) -> tuple[bool, np.ndarray]:
    """Barycentric membership test for a full-dimensional simplex.

    Returns (inside, lambdas) with sum(lambdas) = 1, lambdas solving
    x = sum_i lambda_i v_i.  Inside means every lambda_i >= -tol.
    """
    x = as_vector(x, dim=s.ambient_dim)
    if s.dim != s.ambient_dim:
        raise ValueError("point_in_simplex needs a full-dimensional simplex")
    e = s.edge_matrix()
    try:
        y = np.linalg.solve(e.T, x - s.vertices[0])
    except np.linalg.LinAlgError as exc:
        raise DegenerateSimplex("barycentric solve failed") from exc
    lam = np.concatenate(([1.0 - y.sum()], y))
    return bool(np.all(lam >= -tol)), lam


def barycentric_batch(points: np.ndarray, s: Simplex) -> np.ndarray:
    """Barycentric coordinates of many points w.r.t. a full-dim simplex."""
    pts = np.asarray(points, dtype=float)
    e = s.edge_matrix()
    y = np.linalg.solve(e.T, (pts - s.vertices[0]).T).T
    lam0 = 1.0 - y.sum(axis=1, keepdims=True)
    return np.hstack([lam0, y])


# ---------------------------------------------------------------------------
# distances to simplices (exact, min over faces)


def simplex_distance(x, vertices: np.ndarray) -> float:
    """Exact Euclidean distance from a point to a k-simplex in R^m."""
    x = np.asarray(x, dtype=float)
    v = np.asarray(vertices, dtype=float)
    k = v.shape[0] - 1
    if k == 0:
        return float(np.linalg.norm(x - v[0]))
    e = v[1:] - v[0]
    gram = e @ e.T
    try:
        y = np.linalg.solve(gram, e @ (x - v[0]))
    except np.linalg.LinAlgError:
        y = np.linalg.lstsq(gram, e @ (x - v[0]), rcond=None)[0]
    lam = np.concatenate(([1.0 - y.sum()], y))
    if np.all(lam >= -1e-12):
        proj = v[0] + y @ e
        return float(np.linalg.norm(x - proj))
    # closest point lies on a proper face
    best = np.inf
    for i in range(k + 1):
        face = np.delete(v, i, axis=0)
        best = min(best, simplex_distance(x, face))
    return best


def points_to_vertices(points: np.ndarray, verts: np.ndarray) -> np.ndarray:
    """(P, F) distances from each point to each 0-face."""
    diff = points[:, None, :] - verts[None, :, :]
    return np.linalg.norm(diff, axis=2)


def points_to_segments_pairs(points: np.ndarray, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Distances for paired (point, segment) arrays of equal length."""
    d = b - a
    denom = np.einsum("ij,ij->i", d, d)
    denom = np.where(denom <= 0.0, 1.0, denom)
    t = np.einsum("ij,ij->i", points - a, d) / denom
    t = np.clip(t, 0.0, 1.0)
    closest = a + t[:, None] * d
    return np.linalg.norm(points - closest, axis=1)


def points_to_triangles_pairs(points: np.ndarray, tri: np.ndarray) -> np.ndarray:
    """Distances for paired (point, triangle) arrays.

    tri has shape (P, 3, m).  Vectorized closest-point-on-triangle: project
    onto the plane, test barycentric signs, fall back to the three edges.
    """
    a, b, c = tri[:, 0], tri[:, 1], tri[:, 2]
    ab, ac = b - a, c - a
    ap = points - a
    d00 = np.einsum("ij,ij->i", ab, ab)
    d01 = np.einsum("ij,ij->i", ab, ac)
    d11 = np.einsum("ij,ij->i", ac, ac)
    d20 = np.einsum("ij,ij->i", ap, ab)
    d21 = np.einsum("ij,ij->i", ap, ac)
    denom = d00 * d11 - d01 * d01
    denom_safe = np.where(np.abs(denom) < 1e-300, 1.0, denom)
    v = (d11 * d20 - d01 * d21) / denom_safe
    w = (d00 * d21 - d01 * d20) / denom_safe
    inside = (v >= 0.0) & (w >= 0.0) & (v + w <= 1.0) & (np.abs(denom) >= 1e-300)
    proj = a + v[:, None] * ab + w[:, None] * ac
    d_face = np.linalg.norm(points - proj, axis=1)
    d_e1 = points_to_segments_pairs(points, a, b)
    d_e2 = points_to_segments_pairs(points, a, c)
    d_e3 = points_to_segments_pairs(points, b, c)
    d_edge = np.minimum(np.minimum(d_e1, d_e2), d_e3)
    return np.where(inside, np.minimum(d_face, d_edge), d_edge)


def points_to_faces_pairs(points: np.ndarray, faces: np.ndarray) -> np.ndarray:
    """Paired distances where faces has shape (P, k+1, m), k in {0, 1, 2}."""
    k = faces.shape[1] - 1
    if k == 0:
        return np.linalg.norm(points - faces[:, 0], axis=1)
    if k == 1:
        return points_to_segments_pairs(points, faces[:, 0], faces[:, 1])
    if k == 2:
        return points_to_triangles_pairs(points, faces)
    return np.array([simplex_distance(p, f) for p, f in zip(points, faces)])


def min_distance_to_faces(points: np.ndarray, faces: np.ndarray,
                          chunk: int = 256) -> np.ndarray:
    """Min distance from each point to any face; faces shape (F, k+1, m)."""
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    out = np.full(pts.shape[0], np.inf)
    for start in range(0, faces.shape[0], chunk):
        fs = faces[start:start + chunk]
        p_rep = np.repeat(pts, fs.shape[0], axis=0)
        f_rep = np.tile(fs, (pts.shape[0], 1, 1))
        d = points_to_faces_pairs(p_rep, f_rep).reshape(pts.shape[0], fs.shape[0])
        out = np.minimum(out, d.min(axis=1))
    return out


def rotation_to_pole(c: np.ndarray) -> np.ndarray:
    """Orthogonal matrix Q with Q @ c = e_m (the last coordinate axis).

    Householder reflection; Q is symmetric and Q @ Q.T = I exactly up to
    rounding.  Used to bring a cover cap's center to the chart pole.
    """
    c = radial_projection(c)
    m = c.shape[0]
    pole = np.zeros(m)
    pole[-1] = 1.0
    w = c - pole
    wn = float(np.dot(w, w))
    if wn < 1e-30:
        return np.eye(m)
    return np.eye(m) - 2.0 * np.outer(w, w) / wn

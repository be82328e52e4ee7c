import numpy as np
import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from labyrinth import geometry as geo
from labyrinth.errors import (
    DegenerateSimplex,
    OrientationUndefined,
    ProjectionUndefined,
)


def test_circumsphere_right_triangle():
    s = geo.Simplex(np.array([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]]))
    sph = geo.circumsphere(s)
    np.testing.assert_allclose(sph.center, [0.5, 0.5], atol=1e-12)
    assert sph.radius == pytest.approx(np.sqrt(2.0) / 2.0, rel=1e-12)


def test_circumsphere_regular_tetrahedron():
    # edge length 1, circumradius sqrt(3/8)
    v = np.array(
        [
            [0.0, 0.0, 0.0],
            [1.0, 0.0, 0.0],
            [0.5, np.sqrt(3.0) / 2.0, 0.0],
            [0.5, np.sqrt(3.0) / 6.0, np.sqrt(2.0 / 3.0)],
        ]
    )
    sph = geo.circumsphere(geo.Simplex(v))
    assert sph.radius == pytest.approx(np.sqrt(3.0 / 8.0), rel=1e-12)


def test_circumsphere_random_simplex_residual():
    # [DERIVED] oracle: residual check against the linear-system solve
    rng = np.random.default_rng(7)
    v = rng.normal(size=(4, 3))
    sph = geo.circumsphere(geo.Simplex(v))
    d = np.linalg.norm(v - sph.center, axis=1)
    assert np.max(np.abs(d - sph.radius)) <= 1e-9 * sph.radius


def test_circumsphere_affine_hull_case():
    # 2-simplex in R^3: center must lie in the affine hull
    rng = np.random.default_rng(3)
    v = rng.normal(size=(3, 3))
    sph = geo.circumsphere(geo.Simplex(v))
    e = v[1:] - v[0]
    normal = np.cross(e[0], e[1])
    normal /= np.linalg.norm(normal)
    assert abs(np.dot(sph.center - v[0], normal)) < 1e-9
    d = np.linalg.norm(v - sph.center, axis=1)
    assert np.max(np.abs(d - sph.radius)) <= 1e-9 * sph.radius


def test_degenerate_simplex_rejected():
    with pytest.raises(DegenerateSimplex):
        geo.Simplex(np.array([[0.0, 0.0], [1.0, 0.0], [2.0, 0.0]]))


def test_supporting_hyperplane_segment():
    s = geo.Simplex(np.array([[1.0, 0.0], [0.0, 1.0]]))
    h = geo.supporting_hyperplane(s)
    r2 = np.sqrt(2.0) / 2.0
    np.testing.assert_allclose(h.normal, [r2, r2], atol=1e-12)
    assert h.offset == pytest.approx(r2, rel=1e-12)


def test_supporting_hyperplane_pole_facet():
    # tiny facet at the north pole of the unit sphere: normal ~ e_z
    base = np.array([[0.0, 0.0], [1e-3, 0.0], [0.0, 1e-3]])
    lifted = np.hstack([base, np.sqrt(1.0 - (base**2).sum(axis=1))[:, None]])
    h = geo.supporting_hyperplane(geo.Simplex(lifted))
    assert h.normal[-1] > 0.999999
    assert h.offset > 0.0


def test_supporting_hyperplane_residuals():
    rng = np.random.default_rng(11)
    base = rng.uniform(-0.05, 0.05, size=(3, 2)) + np.array([0.2, 0.1])
    lifted = np.hstack([base, np.sqrt(0.75**2 - (base**2).sum(axis=1))[:, None]])
    h = geo.supporting_hyperplane(geo.Simplex(lifted))
    res = np.abs(lifted @ h.normal - h.offset)
    assert np.max(res) < 1e-9


def test_supporting_hyperplane_through_origin():
    s = geo.Simplex(np.array([[1.0, 0.0], [-1.0, 0.0]]))
    with pytest.raises(OrientationUndefined):
        geo.supporting_hyperplane(s)


def test_hyperplane_translation_along_normal():
    rng = np.random.default_rng(5)
    base = rng.uniform(0.1, 0.3, size=(3, 2))
    lifted = np.hstack([base, np.sqrt(1.0 - (base**2).sum(axis=1))[:, None]])
    h = geo.supporting_hyperplane(geo.Simplex(lifted))
    t = 0.37
    shifted = geo.supporting_hyperplane(geo.Simplex(lifted + t * h.normal))
    assert shifted.offset == pytest.approx(h.offset + t, abs=1e-10)
    np.testing.assert_allclose(shifted.normal, h.normal, atol=1e-9)


def test_radial_projection():
    np.testing.assert_allclose(geo.radial_projection([3.0, 4.0]), [0.6, 0.8])
    u = np.array([0.0, 1.0, 0.0])
    np.testing.assert_allclose(geo.radial_projection(u), u)
    with pytest.raises(ProjectionUndefined):
        geo.radial_projection([0.0, 0.0])


@given(st.lists(st.floats(-10, 10), min_size=2, max_size=5).filter(
    lambda v: sum(x * x for x in v) > 1e-6))
def test_radial_projection_idempotent(coords):
    p = geo.radial_projection(coords)
    np.testing.assert_allclose(geo.radial_projection(p), p, atol=1e-12)


def test_drop_last():
    np.testing.assert_allclose(geo.drop_last([1.0, 2.0, 3.0]), [1.0, 2.0])
    np.testing.assert_allclose(geo.drop_last([0.0, 0.0, 0.0, 5.0]), [0.0, 0.0, 0.0])
    x = np.array([1.5, -2.5])
    re_embedded = np.append(x, 0.0)
    np.testing.assert_allclose(geo.drop_last(re_embedded), x)


def test_point_in_simplex_centroid_and_vertices():
    v = np.array([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]])
    s = geo.Simplex(v)
    inside, lam = geo.point_in_simplex(v.mean(axis=0), s)
    assert inside
    np.testing.assert_allclose(lam, [1 / 3] * 3, atol=1e-12)
    inside, lam = geo.point_in_simplex(v[1], s)
    assert inside
    np.testing.assert_allclose(lam, [0.0, 1.0, 0.0], atol=1e-12)


def test_point_in_simplex_exterior():
    v = np.array([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]])
    inside, lam = geo.point_in_simplex([2.0, 2.0], geo.Simplex(v))
    assert not inside
    assert np.min(lam) < 0.0


@settings(max_examples=50)
@given(st.integers(0, 10_000))
def test_barycentric_reconstruction(seed):
    rng = np.random.default_rng(seed)
    v = rng.normal(size=(4, 3))
    try:
        s = geo.Simplex(v)
    except DegenerateSimplex:
        return
    x = rng.normal(size=3)
    _, lam = geo.point_in_simplex(x, s)
    assert lam.sum() == pytest.approx(1.0, abs=1e-12)
    np.testing.assert_allclose(lam @ v, x, atol=1e-10 * max(1.0, np.abs(x).max()))


def test_simplex_distance_matches_bruteforce():
    rng = np.random.default_rng(42)
    tri = rng.normal(size=(3, 3))
    for _ in range(50):
        x = rng.normal(scale=2.0, size=3)
        d = geo.simplex_distance(x, tri)
        # brute force over a dense barycentric grid
        grid = []
        n = 60
        for i in range(n + 1):
            for j in range(n + 1 - i):
                k = n - i - j
                grid.append((i / n, j / n, k / n))
        pts = np.array(grid) @ tri
        d_brute = np.min(np.linalg.norm(pts - x, axis=1))
        assert d <= d_brute + 1e-9
        assert d >= d_brute - 0.05  # grid resolution slack


def test_points_to_faces_pairs_consistency():
    rng = np.random.default_rng(1)
    pts = rng.normal(size=(40, 3))
    tris = rng.normal(size=(40, 3, 3))
    batch = geo.points_to_faces_pairs(pts, tris)
    single = np.array([geo.simplex_distance(p, t) for p, t in zip(pts, tris)])
    np.testing.assert_allclose(batch, single, atol=1e-10)

    segs = rng.normal(size=(40, 2, 3))
    batch = geo.points_to_faces_pairs(pts, segs)
    single = np.array([geo.simplex_distance(p, t) for p, t in zip(pts, segs)])
    np.testing.assert_allclose(batch, single, atol=1e-10)


def test_min_distance_to_faces():
    rng = np.random.default_rng(2)
    faces = rng.normal(size=(30, 3, 3))
    pts = rng.normal(size=(10, 3))
    d = geo.min_distance_to_faces(pts, faces)
    brute = np.array(
        [min(geo.simplex_distance(p, f) for f in faces) for p in pts]
    )
    np.testing.assert_allclose(d, brute, atol=1e-10)


def test_shell_interval():
    sh = geo.ShellInterval(0.5, 0.9)
    assert sh.contains(0.9) and not sh.contains(0.5)
    assert sh.width == pytest.approx(0.4)
    with pytest.raises(ValueError):
        geo.ShellInterval(0.9, 0.5)


def test_spherical_box_contains():
    box = geo.SphericalBox(
        cap_center=np.array([0.0, 0.0, 1.0]),
        cap_radius=0.5,
        shell=geo.ShellInterval(0.5, 1.0),
    )
    assert box.contains([0.0, 0.0, 0.75])
    assert not box.contains([0.0, 0.0, 0.25])     # below the shell
    assert not box.contains([0.75, 0.0, 0.0])     # outside the cap


def test_rotation_to_pole():
    rng = np.random.default_rng(9)
    for _ in range(20):
        c = geo.radial_projection(rng.normal(size=4))
        q = geo.rotation_to_pole(c)
        np.testing.assert_allclose(q @ q.T, np.eye(4), atol=1e-12)
        np.testing.assert_allclose(q @ c, [0, 0, 0, 1], atol=1e-12)

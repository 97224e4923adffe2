import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from growforms.metrics.geometry import (
    convex_hull,
    interior_angles,
    min_width,
    perimeter,
    point_in_polygon,
    polygon_area,
    polygon_centroid,
    ray_boundary_distance,
)

from conftest import random_ring, regular_ring

SQUARE = np.array([[0.0, 0.0], [2.0, 0.0], [2.0, 2.0], [0.0, 2.0]])


def random_points(seed, n):
    return np.random.default_rng(seed).uniform(-50, 50, size=(n, 2))


def sweep_width(hull, step_deg=0.1):
    """Directional-sweep oracle: min over directions of the projection extent."""
    angles = np.deg2rad(np.arange(0.0, 180.0, step_deg))
    dirs = np.column_stack([np.cos(angles), np.sin(angles)])
    proj = hull @ dirs.T
    return float((proj.max(axis=0) - proj.min(axis=0)).min())


# --------------------------------------------------------------- convex hull

@pytest.mark.parametrize("seed", range(10))
def test_hull_contains_all_points(seed):
    pts = random_points(seed, 60)
    hull = convex_hull(pts)
    # half-plane oracle: every input point is on or inside each hull edge
    n = len(hull)
    for i in range(n):
        a, b = hull[i], hull[(i + 1) % n]
        cross = ((b[0] - a[0]) * (pts[:, 1] - a[1])
                 - (b[1] - a[1]) * (pts[:, 0] - a[0]))
        assert (cross >= -1e-9).all()


@pytest.mark.parametrize("seed", range(10))
def test_hull_vertices_are_input_points_and_ccw(seed):
    pts = random_points(seed, 40)
    hull = convex_hull(pts)
    as_set = {tuple(p) for p in pts.tolist()}
    assert all(tuple(v) in as_set for v in hull.tolist())
    x, y = hull[:, 0], hull[:, 1]
    signed2 = np.dot(x, np.roll(y, -1)) - np.dot(y, np.roll(x, -1))
    assert signed2 > 0  # counter-clockwise


def test_hull_drops_collinear_points():
    pts = np.array([[0, 0], [1, 0], [2, 0], [2, 2], [0, 2], [1, 1]], dtype=float)
    hull = convex_hull(pts)
    assert len(hull) == 4


def test_hull_degenerate_inputs():
    assert len(convex_hull([[1.0, 1.0]])) == 1
    assert len(convex_hull([[0, 0], [1, 1], [2, 2], [3, 3]])) == 2
    with pytest.raises(ValueError):
        convex_hull(np.empty((0, 2)))


# ---------------------------------------------------------------- min width

def test_min_width_rectangle():
    rect = np.array([[0, 0], [10, 0], [10, 3], [0, 3]], dtype=float)
    assert min_width(convex_hull(rect)) == pytest.approx(3.0)


def test_min_width_degenerate():
    assert min_width(np.array([[0.0, 0.0], [1.0, 1.0]])) == 0.0


@pytest.mark.parametrize("seed", range(20))
def test_min_width_matches_sweep_oracle(seed):
    hull = convex_hull(random_points(seed + 100, 30))
    got = min_width(hull)
    ref = sweep_width(hull)
    assert got <= ref + 1e-9  # calipers is exact, the sweep overshoots
    assert abs(got - ref) <= 0.005 * ref


# -------------------------------------------------- perimeter/area/centroid

def test_perimeter_square():
    assert perimeter(SQUARE) == pytest.approx(8.0)
    assert perimeter(SQUARE[:1]) == 0.0


def test_area_and_centroid():
    assert polygon_area(SQUARE) == pytest.approx(4.0)
    assert polygon_area(SQUARE[::-1]) == pytest.approx(4.0)  # orientation-free
    assert polygon_centroid(SQUARE) == pytest.approx([1.0, 1.0])
    tri = np.array([[0.0, 0.0], [3.0, 0.0], [0.0, 3.0]])
    assert polygon_area(tri) == pytest.approx(4.5)
    assert polygon_centroid(tri) == pytest.approx([1.0, 1.0])


@given(st.integers(0, 50), st.floats(-20, 20), st.floats(-20, 20))
@settings(max_examples=30)
def test_area_translation_invariant(seed, dx, dy):
    ring = random_ring(np.random.default_rng(seed), 12)
    moved = ring + [dx, dy]
    assert polygon_area(moved) == pytest.approx(polygon_area(ring), rel=1e-6, abs=1e-6)


# ---------------------------------------------------------- point in polygon

def test_point_in_polygon_square():
    assert point_in_polygon([1.0, 1.0], SQUARE)
    assert not point_in_polygon([3.0, 1.0], SQUARE)
    assert not point_in_polygon([-1.0, 1.0], SQUARE)


def test_point_in_polygon_concave():
    # C-shape: the notch is outside
    ring = np.array([[0, 0], [4, 0], [4, 4], [0, 4], [0, 3],
                     [3, 3], [3, 1], [0, 1]], dtype=float)
    assert not point_in_polygon([1.5, 2.0], ring)
    assert point_in_polygon([3.5, 2.0], ring)


# ------------------------------------------------------------ interior angle

@pytest.mark.parametrize("ring", [SQUARE, SQUARE[::-1]])
def test_square_angles_are_right(ring):
    assert interior_angles(ring) == pytest.approx(math.pi / 2)


def test_reflex_vertex_angle_exceeds_pi():
    ring = np.array([[0, 0], [4, 0], [4, 4], [2, 1], [0, 4]], dtype=float)
    angles = interior_angles(ring)
    assert angles[3] > math.pi
    # angle sum of a simple n-gon is (n-2)*pi
    assert angles.sum() == pytest.approx((len(ring) - 2) * math.pi)


@pytest.mark.parametrize("n", [3, 5, 8, 12])
def test_regular_polygon_angles(n):
    ring = regular_ring(n, 5.0)
    assert interior_angles(ring) == pytest.approx((n - 2) * math.pi / n)


def test_angles_in_open_interval():
    rng = np.random.default_rng(8)
    for _ in range(20):
        a = interior_angles(random_ring(rng, 15))
        assert np.all(a > 0.0) and np.all(a < 2 * math.pi)


# ------------------------------------------------------------- ray distance

def test_ray_boundary_distance_square():
    assert ray_boundary_distance([1.0, 1.0], [1.0, 0.0], SQUARE) == pytest.approx(1.0)
    assert ray_boundary_distance([1.0, 1.0], [0.0, -1.0], SQUARE) == pytest.approx(1.0)
    # from outside pointing away: no crossing
    assert ray_boundary_distance([5.0, 1.0], [1.0, 0.0], SQUARE) is None


def test_ray_boundary_distance_first_crossing():
    # from inside toward a far edge: nearest crossing wins
    ring = np.array([[0, 0], [10, 0], [10, 10], [0, 10]], dtype=float)
    d = ray_boundary_distance([2.0, 5.0], [1.0, 0.0], ring)
    assert d == pytest.approx(8.0)


@pytest.mark.parametrize("seed", range(10))
def test_ray_distance_point_lands_on_boundary(seed):
    rng = np.random.default_rng(seed)
    ring = random_ring(rng, 12, radius=8.0)
    origin = polygon_centroid(ring)
    theta = rng.uniform(0, 2 * math.pi)
    direction = np.array([math.cos(theta), math.sin(theta)])
    t = ray_boundary_distance(origin, direction, ring)
    assert t is not None
    hit = origin + t * direction
    # the hit point must lie on some edge segment
    best = min(
        _point_segment_distance(hit, ring[i], ring[(i + 1) % len(ring)])
        for i in range(len(ring))
    )
    assert best < 1e-9


def _point_segment_distance(p, a, b):
    ab = b - a
    denom = float(ab @ ab)
    t = 0.0 if denom == 0 else float(np.clip((p - a) @ ab / denom, 0.0, 1.0))
    return float(np.hypot(*(p - (a + t * ab))))

import math

from hypothesis import given
from hypothesis import strategies as st

from conecurve import geometry as geo

coord = st.floats(-100, 100, allow_nan=False)
point = st.tuples(coord, coord)


def test_right_triangle_angles():
    assert math.isclose(geo.opposite_angle(5, 3, 4), math.pi / 2)
    assert math.isclose(geo.opposite_angle(3, 4, 5), math.asin(0.6))
    assert math.isclose(geo.triangle_area(3, 4, 5), 6.0)


def test_degenerate_triangle_has_zero_area():
    assert geo.triangle_area(1, 1, 2) == 0.0
    assert not geo.triangle_inequality_ok(1, 1, 2)


@given(st.floats(0.1, 10), st.floats(0.1, 10), st.floats(0.1, 10))
def test_angles_of_a_triangle_sum_to_pi(a, b, c):
    if not geo.triangle_inequality_ok(a, b, c, 1e-6 * (a + b + c)):
        return
    s = geo.opposite_angle(a, b, c) + geo.opposite_angle(b, c, a) + geo.opposite_angle(c, a, b)
    assert abs(s - math.pi) < 1e-9


@given(point, point, st.floats(0.1, 50), st.floats(0.1, 50), st.booleans())
def test_third_point_distances_and_side(p, q, dp, dq, left):
    d = geo.dist(p, q)
    if d < 1e-3 or not geo.triangle_inequality_ok(d, dp, dq, 1e-3 * (d + dp + dq)):
        return
    r = geo.third_point(p, q, dp, dq, left)
    assert math.isclose(geo.dist(p, r), dp, rel_tol=1e-7, abs_tol=1e-7)
    assert math.isclose(geo.dist(q, r), dq, rel_tol=1e-7, abs_tol=1e-7)
    assert (geo.orient(p, q, r) > 0) == left


@given(point, point, st.floats(0.05, 2 * math.pi - 0.05))
def test_rotation_center_maps_p_to_q(p, q, angle):
    c = geo.rotation_center(p, q, angle)
    image = geo.add(geo.rotate(geo.sub(p, c), angle), c)
    assert geo.dist(image, q) < 1e-8 * (1 + geo.dist(p, q) / abs(math.sin(angle / 2)))


def test_rotation_center_of_translation_is_none():
    assert geo.rotation_center((0, 0), (1, 0), 0.0) is None


def test_segment_intersection_cases():
    assert geo.segments_intersect((0, 0), (2, 2), (0, 2), (2, 0))
    assert not geo.segments_intersect((0, 0), (1, 0), (0, 1), (1, 1))
    assert geo.segments_intersect((0, 0), (1, 0), (1, 0), (2, 1))  # shared endpoint
    assert geo.segments_intersect((0, 0), (1, 0), (1 + 1e-12, 0), (2, 0), tol=1e-9)


def test_polyline_self_intersections():
    square = [(0, 0), (1, 0), (1, 1), (0, 1), (0, 0)]
    assert geo.polyline_self_intersections(square, closed=True) == []
    bowtie = [(0, 0), (1, 1), (1, 0), (0, 1)]
    assert geo.polyline_self_intersections(bowtie) == [(0, 2)]
    folded = [(0, 0), (2, 0), (1, 0)]
    assert geo.polyline_self_intersections(folded) == [(0, 1)]


@given(st.lists(point, min_size=3, max_size=8))
def test_signed_area_flips_with_orientation(pts):
    assert math.isclose(geo.polygon_signed_area(pts), -geo.polygon_signed_area(pts[::-1]), abs_tol=1e-6)


@given(st.floats(-20, 20), point, point, point)
def test_rigid_from_segments(angle, a, b, t):
    if geo.dist(a, b) < 1e-3:
        return
    m = geo.Rigid(angle, t)
    a2, b2 = m(a), m(b)
    m2 = geo.Rigid.from_segments(a, b, a2, b2)
    probe = (3.0, -7.0)
    assert geo.dist(m(probe), m2(probe)) < 1e-6

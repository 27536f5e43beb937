import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conecurve.checks import polygon_curve, random_solid, slice_curve
from conecurve.curve import (SurfaceCurve, all_points, classify, corners, curvature_partition, other_side_class,
                             side_angles, validate_curve)
from conecurve.errors import CurveError
from conecurve.gallery import geodesic_polygon, locate
from conecurve.surface import SurfacePoint

from conftest import cube_surface

PI = math.pi


def cube_belt():
    s, P = cube_surface()
    pts = [(0, 0, 0.5), (1, 0, 0.5), (1, 1, 0.5), (0, 1, 0.5)]
    return SurfaceCurve(s, geodesic_polygon(s, [locate(P, s, p) for p in pts])), s, P


def _random_curve(seed):
    rng = np.random.default_rng(seed)
    while True:
        s, P = random_solid(rng)
        c = slice_curve(s, P, rng) if rng.uniform() < 0.5 else polygon_curve(s, rng)
        if c is not None:
            return c


def test_cube_belt_is_a_geodesic():
    c, s, _ = cube_belt()
    assert validate_curve(c).ok
    cls = classify(c)
    assert cls.geodesic and cls.quasigeodesic
    assert corners(c) == []
    rep = curvature_partition(c)
    # four cube vertices of curvature pi/2 on each side
    assert rep.omega_left == pytest.approx(2 * PI, abs=1e-12)
    assert rep.omega_right == pytest.approx(2 * PI, abs=1e-12)


def test_icosahedron_link_angles(item):
    # two unit triangles meet at each link vertex inside the link, three outside
    c = item("icosahedron").curve
    for cd in corners(c):
        assert cd.alpha == pytest.approx(2 * PI / 3, abs=1e-12)
        assert cd.beta == pytest.approx(PI, abs=1e-12)
        assert cd.omega == pytest.approx(PI / 3, abs=1e-12)


def test_reversal_swaps_sides(item):
    c = item("cuboctahedron_hexagon").curve
    r = c.reversed()
    a = [side_angles(c, i) for i in range(c.n)]
    # waypoint i of c is waypoint -i of the reversal
    b = [side_angles(r, (-i) % r.n) for i in range(r.n)]
    for (l1, r1), (l2, r2) in zip(a, b):
        assert l1 == pytest.approx(r2, abs=1e-12) and r1 == pytest.approx(l2, abs=1e-12)
    p, q = curvature_partition(c), curvature_partition(r)
    assert p.omega_left == pytest.approx(q.omega_right, abs=1e-12)


def test_rejects_coinciding_waypoints():
    c, s, _ = cube_belt()
    bad = SurfaceCurve(s, list(c.waypoints) + [c.waypoints[0]])
    assert any("coincide" in v for v in validate_curve(bad).violations)
    with pytest.raises(CurveError):
        classify(bad)


def test_rejects_arcs_leaving_their_face():
    c, s, _ = cube_belt()
    w = c.waypoints
    bad = SurfaceCurve(s, [w[0], w[len(w) // 2], w[1]])
    assert any("share no face" in v for v in validate_curve(bad).violations)


def test_open_curve_is_rejected():
    c, s, _ = cube_belt()
    assert not validate_curve(SurfaceCurve(s, c.waypoints, closed=False)).ok


def test_json_round_trip():
    c, s, _ = cube_belt()
    c2 = SurfaceCurve.from_json(s, json.loads(json.dumps(c.to_json())))
    assert [p.key() for p in c2.waypoints] == [p.key() for p in c.waypoints]


def test_loop_point_classes(item):
    c = item("cuboctahedron_loop").curve
    cls = classify(c)
    assert cls.left.convex
    assert cls.right.reflex_loop and cls.right.reflex_loop_point == c.loop_point
    assert cls.loop_point_mismatch is None


@settings(max_examples=60)
@given(st.integers(0, 100_000))
def test_gauss_bonnet_identities(seed):
    c = _random_curve(seed)
    rep = curvature_partition(c)
    for residual in rep.identities().values():
        assert abs(residual) < 1e-7


@settings(max_examples=60)
@given(st.integers(0, 100_000))
def test_angles_at_every_point_add_up(seed):
    c = _random_curve(seed)
    for d in all_points(c):
        assert d.alpha + d.beta + d.omega == pytest.approx(2 * PI, abs=1e-9)


@settings(max_examples=60)
@given(st.integers(0, 100_000))
def test_other_side_table_holds(seed):
    c = _random_curve(seed)
    for row in other_side_class(c):
        if row.holds and row.condition:
            assert row.implied_holds, row


@settings(max_examples=30)
@given(st.integers(0, 100_000))
def test_slice_curves_have_no_vertices_on_them(seed):
    rng = np.random.default_rng(seed)
    s, P = random_solid(rng)
    c = slice_curve(s, P, rng)
    if c is None:
        return
    rep = curvature_partition(c)
    assert rep.curve_vertices == []
    assert rep.omega_curve == 0.0

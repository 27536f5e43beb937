import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conecurve.checks import random_solid
from conecurve.cone import cone_congruent, fit_cone
from conecurve.errors import PreconditionError, SurgeryError
from conecurve.surface import IntrinsicSurface, ekey, validate_surface
from conecurve.surgery import (double_along_boundary, glue_polygon, merge_to_cone, merge_vertices,
                               reflex_cone_construction, split)

from conftest import embed
from test_curve import cube_belt

PI = math.pi


def test_split_cube_belt_into_two_boxes():
    c, s, _ = cube_belt()
    left, right = split(c)
    assert left.surface.area() + right.surface.area() == pytest.approx(s.area(), abs=1e-12)
    assert left.boundary_length() == pytest.approx(4.0, abs=1e-12)
    assert right.boundary_length() == pytest.approx(4.0, abs=1e-12)
    assert sum(left.interior_curvature().values()) == pytest.approx(2 * PI, abs=1e-12)


def test_merge_keeps_total_curvature(item):
    s = item("house").surface
    s2, rec = merge_vertices(s, 8, 9)
    assert rec.omega == pytest.approx(s.curvature(8) + s.curvature(9), abs=1e-12)
    assert s2.curvature(rec.new_vertex) == pytest.approx(rec.omega, abs=1e-9)
    assert s2.total_curvature() == pytest.approx(4 * PI, abs=1e-9)
    assert validate_surface(s2).ok
    # base angles are half the curvatures
    assert rec.base_angles[0] == pytest.approx(s.curvature(8) / 2, abs=1e-12)


def test_merge_rejects_bad_pairs(item):
    s = item("pentagon").surface
    with pytest.raises(SurgeryError):
        merge_vertices(s, 1, 1)
    s2, rec = merge_vertices(s, 1, 2)
    # 3*pi/2 + pi/2 would leave no room for the glued triangles
    with pytest.raises(SurgeryError):
        merge_vertices(s2, rec.new_vertex, 3)


@settings(max_examples=25)
@given(st.integers(0, 100_000))
def test_merge_on_random_solids(seed):
    rng = np.random.default_rng(seed)
    s, _ = random_solid(rng)
    vs = sorted(s.vertices, key=lambda v: s.curvature(v))
    v1, v2 = vs[0], vs[1]
    s2, rec = merge_vertices(s, v1, v2)
    assert validate_surface(s2).ok
    assert s2.total_curvature() == pytest.approx(4 * PI, abs=1e-9)
    for v in s.vertices:
        if v not in (v1, v2):
            assert s2.curvature(v) == pytest.approx(s.curvature(v), abs=1e-9)


def test_doubling_a_square_gives_four_half_turns():
    sq = {0: (0, 0), 1: (1, 0), 2: (1, 1), 3: (0, 1)}
    tris = [(0, 1, 2), (0, 2, 3)]
    flat = IntrinsicSurface(range(4), tris, {ekey(a, b): math.dist(sq[a], sq[b])
                                             for t in tris for a, b in zip(t, t[1:] + t[:1])})
    d = double_along_boundary(flat)
    assert validate_surface(d.surface).ok
    for v in range(4):
        assert d.surface.curvature(v) == pytest.approx(PI, abs=1e-12)


def test_doubling_a_half_surface(item):
    left, _ = split(item("house").curve)
    d = double_along_boundary(left)
    rep = validate_surface(d.surface)
    assert rep.ok and rep.closed
    assert d.surface.total_curvature() == pytest.approx(4 * PI, abs=1e-9)


def test_gluing_a_square_lid_onto_a_box():
    c, s, P = cube_belt()
    left, right = split(c)
    for half in (left, right):
        lid = [tuple(embed(P, w)[:2]) for w in c.waypoints]
        closed = glue_polygon(half, lid)
        rep = validate_surface(closed)
        assert rep.ok and rep.closed
        assert closed.total_curvature() == pytest.approx(4 * PI, abs=1e-9)
        assert closed.area() == pytest.approx(half.surface.area() + 1.0, abs=1e-9)


def test_merge_to_cone_matches_the_fit(item):
    c = item("house").curve
    left, _ = split(c)
    cc = merge_to_cone(left)
    assert cc.cone.variant == "proper"
    assert cone_congruent(cc.placement, fit_cone(c, "left"), 1e-9)


def test_merge_order_does_not_matter(item):
    left, _ = split(item("pentagon").curve)
    a, b, d = (merge_to_cone(left, order=o) for o in ([1, 2, 3], [2, 3, 1], [3, 1, 2]))
    assert cone_congruent(a.placement, b.placement, 1e-9)
    assert cone_congruent(a.placement, d.placement, 1e-9)


def test_reflex_construction_on_the_loop(item):
    c = item("cuboctahedron_loop").curve
    rc = reflex_cone_construction(c)
    fr = fit_cone(c, "right")
    assert rc.cone.variant == "proper"
    assert rc.cone.apex_curvature == pytest.approx(PI, abs=1e-9)
    assert cone_congruent(rc.placement, fr, 1e-9)
    assert len(rc.steps) >= 1


def test_reflex_construction_needs_a_left_convex_curve(item):
    with pytest.raises(PreconditionError, match="left angle above pi"):
        reflex_cone_construction(item("cuboctahedron_hexagon").curve.reversed())

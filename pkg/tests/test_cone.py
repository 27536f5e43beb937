import math

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from conecurve.checks import _placement_at
from conecurve.cone import (Cone, ConePlacement, check_visibility, cone_congruent, fit_cone, guaranteed_sides,
                            nested_transfer, visibility_by_rays)
from conecurve.curve import SurfaceCurve, classify, corners, curvature_partition
from conecurve.develop import develop_all, simple_fraction
from conecurve.errors import PreconditionError
from conecurve.gallery import _link
from conecurve.surface import SurfacePoint

from test_curve import _random_curve, cube_belt

PI = math.pi


def test_cone_constructors_check_ranges():
    with pytest.raises(ValueError):
        Cone.proper(0.0)
    with pytest.raises(ValueError):
        Cone.proper(2 * PI)
    with pytest.raises(ValueError):
        Cone.cylinder(-1.0)
    assert Cone.proper(PI / 2).apex_curvature == pytest.approx(1.5 * PI)
    assert Cone.planar().apex_curvature == 0.0


def test_house_fits_a_half_plane_cone(item):
    fit = fit_cone(item("house").curve, "left")
    assert fit.cone.variant == "proper"
    assert fit.cone.apex_angle == pytest.approx(PI, abs=1e-9)
    assert fit.lives_on_cone and fit.visible
    assert fit.apex_side == "left"


def test_cube_belt_fits_a_cylinder():
    c, _, _ = cube_belt()
    for side in ("left", "right"):
        fit = fit_cone(c, side)
        assert fit.cone.variant == "cylinder"
        assert fit.cone.circumference == pytest.approx(4.0, abs=1e-12)
        assert fit.lives_on_cone


def test_glued_star_fits_the_plane(item):
    fit = fit_cone(item("qg_loop_star").curve, "right")
    assert fit.cone.variant == "planar"
    assert fit.lives_on_cone


def test_visibility_needs_a_cone(item):
    fit = fit_cone(item("house").curve, "left")
    fit.cone = None
    with pytest.raises(PreconditionError):
        check_visibility(fit)


def test_congruence_distinguishes_cones():
    a = ConePlacement(Cone.proper(PI), radii=[1.0, 2.0], increments=[0.5, 2.64])
    b = ConePlacement(Cone.proper(PI), radii=[1.0, 2.0 + 1e-6], increments=[0.5, 2.64])
    c = ConePlacement(Cone.cylinder(PI))
    assert cone_congruent(a, a)
    assert not cone_congruent(a, b)
    assert cone_congruent(a, b, tol=1e-5)
    assert not cone_congruent(a, c)
    # increments compare modulo the cone angle
    d = ConePlacement(Cone.proper(PI), radii=[1.0, 2.0], increments=[0.5 + PI, 2.64])
    assert cone_congruent(a, d)


def test_fit_is_independent_of_the_initial_cut(item):
    c = item("cuboctahedron_loop").curve
    base = fit_cone(c, "right")
    for cut in [(0, 0.3), (2, 0.7), 3]:
        assert cone_congruent(fit_cone(c, "right", cut=cut), base, 1e-9)


def test_guaranteed_sides(item):
    assert guaranteed_sides(item("icosahedron").curve) == ["left", "right"]
    assert guaranteed_sides(item("house").curve) == ["left", "right"]
    # four corners of the hexagon have left angle plus curvature 7*pi/6
    assert guaranteed_sides(item("cuboctahedron_hexagon").curve) == []


def test_nested_transfer_rejects_curvature_in_the_annulus(item):
    it = item("icosa_zigzag")
    s = it.surface
    link = SurfaceCurve(s, [SurfacePoint.at_vertex(v) for v in _link(s, 0)])
    with pytest.raises(PreconditionError):
        nested_transfer(it.curves["geodesic"], link)


def test_nested_transfer_of_a_curve_to_itself(item):
    c = item("icosa_zigzag").curves["geodesic"]
    assert cone_congruent(nested_transfer(c, c), fit_cone(c, "left"))


@settings(max_examples=60)
@given(st.integers(0, 100_000), st.sampled_from(["left", "right"]))
def test_visibility_matches_ray_oracle(seed, side):
    c = _random_curve(seed)
    fit = fit_cone(c, side)
    assume(fit.cone is not None and fit.cone.variant in ("proper", "cylinder") and fit.winding_ok)
    assert fit.visible == visibility_by_rays(fit, 10_000)


@settings(max_examples=60)
@given(st.integers(0, 100_000), st.sampled_from(["left", "right"]),
       st.lists(st.tuples(st.integers(0, 1000), st.floats(0.01, 0.99)), min_size=3, max_size=3))
def test_placement_is_independent_of_the_cut(seed, side, raw):
    c = _random_curve(seed)
    cuts = [(i % c.n, f) for i, f in raw]
    pl = [_placement_at(c, side, cut, 1e-9) for cut in cuts]
    assume(all(p is not None for p in pl))
    for p in pl[1:]:
        assert cone_congruent(pl[0], p, 1e-9)


def _hidden_apex_loop(c, side, cls, rep):
    # reflex loop whose reflex side carries more than 2*pi: the apex sits on the convex side
    sc = cls.side(side)
    omega = rep.omega_left if side == "left" else rep.omega_right
    return sc.reflex_loop and not sc.reflex and not sc.convex and omega > 2 * PI


@settings(max_examples=25)
@given(st.integers(0, 100_000))
def test_guaranteed_curves_live_on_visible_cones_and_develop_simply(seed):
    c = _random_curve(seed)
    sides = guaranteed_sides(c)
    assume(sides)
    # near folds put curve points within tol of each other in every development
    assume(min(min(cd.alpha, cd.beta) for cd in corners(c)) > 1e-2)
    fits = {side: fit_cone(c, side) for side in sides}
    # a flat convex side puts the other side's apex on the single curved vertex of the curve
    assume(all(f.degenerate is None for f in fits.values()))
    cls, rep = classify(c), curvature_partition(c)
    for side, fit in fits.items():
        assert fit.lives_on_cone, side
        if not _hidden_apex_loop(c, side, cls, rep):
            assert fit.visible, side
        assert simple_fraction(develop_all(c, side, 16)) == 1.0, side


def test_reflex_loop_can_hide_part_of_the_curve_from_an_apex_on_its_convex_side():
    # convex to the right through one vertex; the left cone's generator through that vertex
    # grazes the curve there and meets it again on the arc just before it
    c = _random_curve(48276)
    cls, rep = classify(c), curvature_partition(c)
    assert cls.right.convex and cls.left.reflex_loop
    assert guaranteed_sides(c) == ["left", "right"]
    assert rep.omega_left > 2 * PI
    fit = fit_cone(c, "left")
    assert fit.apex_side == "right"
    assert fit.lives_on_cone
    assert not fit.visible
    assert not visibility_by_rays(fit, 10_000)
    assert fit.visibility_witness["count"] >= 3
    assert fit_cone(c, "right").visible

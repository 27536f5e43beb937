import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conecurve import geometry as geo
from conecurve.curve import curvature_partition
from conecurve.develop import (Development, develop_all, develop_curve, is_simple, normalize_cut, sample_cuts,
                               simple_fraction)

from test_curve import _random_curve, cube_belt

PI = math.pi


def test_cube_belt_develops_to_a_straight_segment():
    c, _, _ = cube_belt()
    d = develop_curve(c, 0, "left")
    assert d.total_turn == pytest.approx(0.0, abs=1e-12)
    assert geo.dist(d.x1, d.x2) == pytest.approx(4.0, abs=1e-12)
    assert all(abs(p[1]) < 1e-12 for p in d.points)
    assert is_simple(d)


def test_cut_forms_agree():
    c, _, _ = cube_belt()
    # arc-length fraction 0 and waypoint 0 are the same cut
    assert normalize_cut(c, 0.0) == normalize_cut(c, 0) == (0, 0.0)
    arc, frac = normalize_cut(c, 0.5)
    assert 0 <= arc < c.n and 0 <= frac < 1
    with pytest.raises(Exception):
        develop_curve(c, (0, 1.5))


def test_is_simple_on_hand_made_chains():
    def dev(pts):
        return Development("left", pts, [None] * len(pts), [None] * len(pts), [0.0] * (len(pts) - 2), (0, 0.0), 0.0)

    assert is_simple(dev([(0, 0), (1, 0), (1, 1), (0, 1), (0, 0.5)]))
    bad = is_simple(dev([(0, 0), (2, 0), (2, 1), (1, -1)]))
    assert not bad and bad.first_violation == (0, 2)


@settings(max_examples=50)
@given(st.integers(0, 100_000), st.floats(0, 0.999), st.sampled_from(["left", "right"]))
def test_development_preserves_lengths_and_total_turn(seed, u, side):
    c = _random_curve(seed)
    d = develop_curve(c, u, side)
    seg = [geo.dist(a, b) for a, b in zip(d.points, d.points[1:])]
    assert sum(seg) == pytest.approx(c.length(), abs=1e-9)
    # the turn away from the enclosed curvature is 2*pi minus that curvature; right turns count negative
    om = curvature_partition(c).omega(side)
    sign = 1 if side == "left" else -1
    assert sign * d.total_turn + om == pytest.approx(2 * PI, abs=1e-7)


@settings(max_examples=50)
@given(st.integers(0, 100_000), st.floats(0, 0.999), st.floats(0, 0.999))
def test_apex_is_equidistant_from_both_cut_images(seed, u, v):
    c = _random_curve(seed)
    for cut in (u, v):
        d = develop_curve(c, cut, "left")
        a = geo.rotation_center(d.x1, d.x2, d.total_turn)
        if a is None:
            continue
        assert geo.dist(a, d.x1) == pytest.approx(geo.dist(a, d.x2), rel=1e-9, abs=1e-9)


def test_sample_cuts_cover_corners_midpoints_and_uniform(item):
    c = item("house").curve
    kinds = [k for _, k in sample_cuts(c, 16, [0, 3])]
    assert kinds.count("corner") == 2
    assert kinds.count("midpoint") == c.n
    assert 0 < kinds.count("uniform") <= 16


def test_house_sweep_is_all_simple(item):
    rows = develop_all(item("house").curve, "left", 32)
    assert simple_fraction(rows) == 1.0
    assert all(r.violation is None for r in rows)


def test_spiral_sweep_is_never_simple(item):
    rows = develop_all(item("spiral_cone").curve, "left", 32)
    assert simple_fraction(rows) == 0.0
    assert all(r.violation is not None for r in rows)

import json
import math

import numpy as np
import pytest

from conecurve.checks import measure_expected, verify_item
from conecurve.cone import fit_cone, guaranteed_sides
from conecurve.curve import is_fold
from conecurve.errors import ConeCurveError
from conecurve.gallery import (BUILDERS, PENTAGON, _house_points, build, convex_polygon, house_geometry,
                               hull_surface)

PI = math.pi
NAMES = sorted(BUILDERS)


@pytest.mark.parametrize("name", NAMES)
def test_every_expected_value_is_reproduced(item, name):
    failed = [(c.label, c.detail) for c in verify_item(item(name)) if not c.passed]
    assert failed == []


@pytest.mark.parametrize("name", NAMES)
def test_expected_values_carry_a_basis(item, name):
    for key, ex in item(name).expected.items():
        assert ex.basis in ("reference", "trivial", "derived"), key
        if ex.basis == "derived":
            assert ex.note, f"{key} needs a note naming its computation"


@pytest.mark.parametrize("name", ["house", "pentagon", "cuboctahedron_loop"])
def test_builders_are_deterministic(name):
    a, b = build(name), build(name)
    assert json.dumps(a.surface.to_json()) == json.dumps(b.surface.to_json())
    assert a.curve.to_json() == b.curve.to_json()


def test_unknown_name():
    with pytest.raises(ConeCurveError, match="unknown gallery item"):
        build("dodecahedron")


def test_write_produces_surface_curves_and_expectations(item, tmp_path):
    it = item("icosa_zigzag")
    files = it.write(tmp_path)
    names = sorted(p.rsplit("/", 1)[-1] for p in files)
    assert names == ["curve_C.json", "curve_geodesic.json", "expected.json", "surface.json"]
    ex = json.loads((tmp_path / "expected.json").read_text())
    assert ex["expected"]["outer_cone"]["basis"] == "reference"


# independent oracles for derived values


def _angle_sum_3d(P, tris, v):
    total = 0.0
    for t in tris:
        if v in t:
            k = t.index(v)
            a, b = P[t[(k + 1) % 3]] - P[v], P[t[(k + 2) % 3]] - P[v]
            total += math.acos(np.dot(a, b) / np.linalg.norm(a) / np.linalg.norm(b))
    return total


def test_house_ridge_solves_for_half_pi():
    # curvature straight from the embedded face angles, no intrinsic layout involved
    g = house_geometry(3.0, math.sqrt(2.0))
    s, P = hull_surface(_house_points(g["X"], g["Y"], g["W"], g["h"], g["r"]))
    for v in (8, 9):
        assert 2 * PI - _angle_sum_3d(P, s.triangles, v) == pytest.approx(PI / 2, abs=1e-9)
    assert 2 * g["X"] == pytest.approx(3.0) and 2 * g["Y"] == pytest.approx(math.sqrt(2.0))


def test_spike_house_base():
    g = house_geometry(3.0, 3.0, rise=None, ridge=1.0)
    s, P = hull_surface(_house_points(g["X"], g["Y"], g["W"], g["h"], g["r"]))
    for v in (8, 9):
        assert 2 * PI - _angle_sum_3d(P, s.triangles, v) == pytest.approx(PI / 2, abs=1e-9)


def test_pentagon_interior_angles():
    pts = [np.array(PENTAGON[k], float) for k in sorted(PENTAGON)]
    n = len(pts)
    angles = {}
    for k in range(n):
        a, b = pts[k - 1] - pts[k], pts[(k + 1) % n] - pts[k]
        angles[k + 1] = math.acos(np.dot(a, b) / np.linalg.norm(a) / np.linalg.norm(b))
    assert [angles[k] / PI for k in (1, 2, 3, 4, 5)] == pytest.approx([0.5, 0.75, 0.75, 0.5, 0.5])
    # doubling turns an interior angle a into curvature 2*pi - 2a
    got = measure_expected(build("pentagon"))["curvatures"]
    for k, a in angles.items():
        assert got[k] == pytest.approx(2 * PI - 2 * a, abs=1e-12)


def test_convex_polygon_meets_its_constraints():
    lengths = [1.0, 2.0, 1.5, 1.2, 0.8]
    Q = convex_polygon(lengths, {1: 0.6 * PI})
    n = len(Q)
    for k in range(n):
        assert math.dist(Q[k], Q[(k + 1) % n]) == pytest.approx(lengths[k], abs=1e-9)
    turns = []
    for k in range(n):
        a, b, c = np.array(Q[k - 1]), np.array(Q[k]), np.array(Q[(k + 1) % n])
        u, w = b - a, c - b
        turns.append(math.atan2(u[0] * w[1] - u[1] * w[0], np.dot(u, w)))
    assert all(t > 0 for t in turns)
    assert sum(turns) == pytest.approx(2 * PI, abs=1e-9)
    assert PI - turns[1] == pytest.approx(0.6 * PI, abs=1e-9)


def test_spiral_open_curve_crosses_itself_in_the_plane(item):
    it = item("spiral_cone")
    assert measure_expected(it)["open_development_simple"] is False
    assert it.params["eps"] == pytest.approx(1e-3 * it.params["slant"])


def _guaranteed_curves():
    out = []
    for name in NAMES:
        for key, c in build(name).curves.items():
            if guaranteed_sides(c):
                out.append((name, key))
    return out


@pytest.mark.parametrize("name,key", _guaranteed_curves())
def test_guaranteed_gallery_curves_are_visible_on_both_sides(item, name, key):
    c = item(name).curves[key]
    # the fold side of a doubled curve is an empty region with nothing to develop
    folded = any(is_fold(c, i) for i in range(c.n))
    for side in [s for s in ("left", "right") if not (folded and s == c.fold_side)]:
        fit = fit_cone(c, side)
        assert fit.lives_on_cone and fit.visible, side

import json
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conecurve.errors import SurfaceError
from conecurve.surface import IntrinsicSurface, SurfacePoint, ekey, validate_surface, vertex_curvature

from conftest import cube_surface


def tetrahedron(a=1.0):
    tris = [(0, 1, 2), (0, 2, 3), (0, 3, 1), (1, 3, 2)]
    return IntrinsicSurface(range(4), tris, {ekey(i, j): a for i in range(4) for j in range(i + 1, 4)})


def test_regular_tetrahedron_curvature():
    s = tetrahedron()
    rep = validate_surface(s)
    assert rep.ok and rep.closed and rep.convex
    assert rep.euler_characteristic == 2
    for v in s.vertices:
        assert vertex_curvature(s, v) == pytest.approx(math.pi, abs=1e-12)


def test_cube_vertex_curvature_is_half_pi():
    s, _ = cube_surface()
    assert validate_surface(s).ok
    for v in s.vertices:
        assert s.curvature(v) == pytest.approx(math.pi / 2, abs=1e-12)


def test_triangle_inequality_violation_is_reported():
    s = IntrinsicSurface(range(4), [(0, 1, 2), (0, 2, 3), (0, 3, 1), (1, 3, 2)],
                         {ekey(i, j): (5.0 if (i, j) == (0, 1) else 1.0) for i in range(4) for j in range(i + 1, 4)})
    rep = validate_surface(s)
    assert not rep.ok
    assert any("triangle inequality" in v for v in rep.violations)


def test_open_surface_is_not_closed():
    s = IntrinsicSurface(range(3), [(0, 1, 2)], {ekey(0, 1): 1, ekey(1, 2): 1, ekey(0, 2): 1})
    rep = validate_surface(s)
    assert not rep.closed
    assert s.boundary_loops == [[0, 1, 2]] or sorted(s.boundary_loops[0]) == [0, 1, 2]


def test_json_round_trip():
    s, _ = cube_surface()
    s2 = IntrinsicSurface.from_json(json.loads(json.dumps(s.to_json())))
    assert s2.triangles == s.triangles
    assert s2.lengths == s.lengths


def test_from_json_rejects_inconsistent_duplicate_lengths():
    d = tetrahedron().to_json()
    d["edge_lengths"].append([0, 1, 2.0])
    with pytest.raises(SurfaceError):
        IntrinsicSurface.from_json(d)


@given(st.integers(6, 14), st.integers(0, 10_000))
def test_gauss_bonnet_on_random_hulls(n, seed):
    from conecurve.gallery import hull_surface

    rng = np.random.default_rng(seed)
    u = rng.normal(size=(n, 3))
    u /= np.linalg.norm(u, axis=1)[:, None]
    s, _ = hull_surface(u * rng.uniform(0.5, 2, size=3))
    assert abs(s.total_curvature() - 4 * math.pi) < 1e-9
    assert validate_surface(s).convex


def test_point_round_trip_and_faces():
    s, _ = cube_surface()
    tri = s.triangles[0]
    p = SurfacePoint.in_face(tri, (0.2, 0.3, 0.5))
    assert SurfacePoint.from_json(p.to_json()).key() == p.key()
    assert s.point_faces(p) == [0]
    e = SurfacePoint.on_edge(tri[0], tri[1], 0.25)
    assert len(s.point_faces(e)) == 2
    v = SurfacePoint.at_vertex(tri[0])
    assert len(s.point_faces(v)) == len(s.vertex_faces[tri[0]])


def test_coords_round_trip_in_face():
    s, _ = cube_surface()
    p = SurfacePoint.in_face(s.triangles[3], (0.1, 0.6, 0.3))
    xy = s.coords_in_face(p, 3)
    assert s.point_from_coords(3, xy).key() == p.key()

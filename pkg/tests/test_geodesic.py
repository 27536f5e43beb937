import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conecurve.checks import random_point, random_solid
from conecurve.config import Config
from conecurve.errors import SearchBudgetExceeded
from conecurve.geodesic import path_length, shortest_path, trace
from conecurve.local import direction_angle
from conecurve.oracles import facewalk_distance
from conecurve.surface import SurfacePoint

from conftest import cube_surface, embed


def _vertex_at(P, x):
    return int(np.argmin(np.linalg.norm(P - np.asarray(x, float), axis=1)))


def test_cube_opposite_corners():
    # unfolding two adjacent faces into a 1 x 2 rectangle gives the diagonal sqrt(5)
    s, P = cube_surface()
    a, b = _vertex_at(P, (0, 0, 0)), _vertex_at(P, (1, 1, 1))
    path = shortest_path(s, SurfacePoint.at_vertex(a), SurfacePoint.at_vertex(b))
    assert path.length == pytest.approx(math.sqrt(5), abs=1e-12)
    assert path_length(s, path.points) == pytest.approx(path.length, abs=1e-12)


def test_cube_adjacent_corners_follow_the_edge():
    s, P = cube_surface()
    a, b = _vertex_at(P, (0, 0, 0)), _vertex_at(P, (1, 0, 0))
    path = shortest_path(s, SurfacePoint.at_vertex(a), SurfacePoint.at_vertex(b))
    assert path.length == pytest.approx(1.0, abs=1e-12)
    assert len(path.points) == 2


def test_same_face_is_a_straight_segment():
    s, P = cube_surface()
    tri = s.triangles[0]
    x = SurfacePoint.in_face(tri, (0.6, 0.2, 0.2))
    y = SurfacePoint.in_face(tri, (0.1, 0.1, 0.8))
    assert shortest_path(s, x, y).length == pytest.approx(np.linalg.norm(embed(P, x) - embed(P, y)), abs=1e-12)


def test_expansion_budget_is_enforced():
    s, P = cube_surface()
    a, b = _vertex_at(P, (0, 0, 0)), _vertex_at(P, (1, 1, 1))
    with pytest.raises(SearchBudgetExceeded):
        shortest_path(s, SurfacePoint.at_vertex(a), SurfacePoint.at_vertex(b), max_expansions=2)


def test_trace_on_a_flat_face_is_straight():
    s, P = cube_surface()
    tri = s.triangles[0]
    x = SurfacePoint.in_face(tri, (1 / 3, 1 / 3, 1 / 3))
    y = SurfacePoint.in_face(tri, (0.5, 0.25, 0.25))
    theta = direction_angle(s, x, y)
    d = np.linalg.norm(embed(P, x) - embed(P, y))
    pts, _ = trace(s, x, theta, d)
    assert np.linalg.norm(embed(P, pts[-1]) - embed(P, y)) < 1e-9


def test_trace_around_the_cube_belt():
    # a straight line across the middle of four side faces closes up after length 4
    s, P = cube_surface()
    from conecurve.gallery import locate

    x = locate(P, s, (0.5, 0.0, 0.5))
    ahead = locate(P, s, (0.9, 0.0, 0.5))
    pts, _ = trace(s, x, direction_angle(s, x, ahead), 4.0)
    assert np.linalg.norm(embed(P, pts[-1]) - embed(P, x)) < 1e-9


@settings(max_examples=40)
@given(st.integers(0, 100_000))
def test_shortest_path_properties(seed):
    rng = np.random.default_rng(seed)
    s, P = random_solid(rng)
    x, y, z = (random_point(s, rng, vertex_chance=0.2) for _ in range(3))
    dxy = shortest_path(s, x, y).length
    # never shorter than the straight chord through space
    assert dxy >= np.linalg.norm(embed(P, x) - embed(P, y)) - 1e-12
    assert dxy == pytest.approx(shortest_path(s, y, x).length, abs=1e-9)
    assert shortest_path(s, x, z).length <= dxy + shortest_path(s, y, z).length + 1e-9


@settings(max_examples=40)
@given(st.integers(0, 100_000))
def test_shortest_path_matches_face_walk_oracle(seed):
    rng = np.random.default_rng(seed)
    s, P = random_solid(rng)
    x, y = random_point(s, rng), random_point(s, rng)
    fast = shortest_path(s, x, y)
    assert fast.length == pytest.approx(facewalk_distance(s, x, y, depth=len(s.triangles)), abs=1e-9)
    assert path_length(s, fast.points) == pytest.approx(fast.length, abs=1e-9)


def test_face_walk_oracle_needs_enough_depth():
    s, P = cube_surface()
    x = SurfacePoint.in_face(s.triangles[0], (0.2, 0.3, 0.5))
    far = max(range(len(s.triangles)), key=lambda f: np.linalg.norm(
        P[list(s.triangles[f])].mean(axis=0) - embed(P, x)))
    y = SurfacePoint.in_face(s.triangles[far], (1 / 3, 1 / 3, 1 / 3))
    assert facewalk_distance(s, x, y, depth=0) == math.inf
    assert facewalk_distance(s, x, y, depth=12) == pytest.approx(shortest_path(s, x, y).length, abs=1e-9)

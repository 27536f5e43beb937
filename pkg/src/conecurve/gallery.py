"""Builders for the worked examples: surfaces, curves and expected values.

Solids given by 3D shape are measured once and kept only as edge lengths.
Each expected value records its basis: ``reference`` values are the
numbers the examples state, ``trivial`` ones follow at sight, and
``derived`` ones come from a computation named in ``note``.
"""
from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import brentq, least_squares, minimize
from scipy.spatial import ConvexHull

from . import geometry as geo
from .config import DEFAULT_TOL
from .curve import SurfaceCurve, curvature_partition
from .errors import ConeCurveError
from .geodesic import shortest_path, trace
from .local import direction_angle
from .surface import IntrinsicSurface, SurfacePoint, ekey, from_positions

PI = math.pi


@dataclass
class Expect:
    value: object
    basis: str  # "reference", "trivial" or "derived"
    note: str = ""

    def to_json(self) -> dict:
        d = {"value": self.value, "basis": self.basis}
        if self.note:
            d["note"] = self.note
        return d


@dataclass
class GalleryItem:
    name: str
    surface: IntrinsicSurface
    curves: Dict[str, SurfaceCurve]
    expected: Dict[str, Expect]
    params: Dict[str, object] = field(default_factory=dict)
    extras: Dict[str, object] = field(default_factory=dict)

    @property
    def curve(self) -> SurfaceCurve:
        return next(iter(self.curves.values()))

    def expected_json(self) -> dict:
        return {"name": self.name, "params": self.params,
                "expected": {k: v.to_json() for k, v in self.expected.items()}}

    def write(self, out_dir) -> List[str]:
        os.makedirs(out_dir, exist_ok=True)
        written = []

        def dump(name, obj):
            path = os.path.join(out_dir, name)
            with open(path, "w") as fh:
                json.dump(obj, fh, indent=2, sort_keys=False)
                fh.write("\n")
            written.append(path)

        dump("surface.json", self.surface.to_json())
        for key, c in self.curves.items():
            dump(f"curve_{key}.json", c.to_json())
        for key, val in self.extras.items():
            if isinstance(val, IntrinsicSurface):
                dump(f"{key}.json", val.to_json())
            elif isinstance(val, (list, dict)):
                dump(f"{key}.json", val)
        dump("expected.json", self.expected_json())
        return written


# --------------------------------------------------------------------------
# construction helpers


def hull_surface(points) -> Tuple[IntrinsicSurface, np.ndarray]:
    """Intrinsic surface of the convex hull of 3D points (outward ccw triangles)."""
    P = np.asarray(points, dtype=float)
    h = ConvexHull(P)
    tris = []
    for simp, eq in zip(h.simplices, h.equations):
        a, b, c = (int(x) for x in simp)
        if np.dot(np.cross(P[b] - P[a], P[c] - P[a]), eq[:3]) < 0:
            b, c = c, b
        tris.append((a, b, c))
    return from_positions(P, tris), P


def locate(P: np.ndarray, s: IntrinsicSurface, x, eps: float = 1e-9, faces=None) -> SurfacePoint:
    """Surface point of an embedded mesh at the 3D position x, searching ``faces`` (default all)."""
    x = np.asarray(x, dtype=float)
    for tri in (s.triangles if faces is None else [s.triangles[f] for f in faces]):
        A, B, C = P[list(tri)]
        n = np.cross(B - A, C - A)
        n /= np.linalg.norm(n)
        if abs(np.dot(x - A, n)) > 1e-7:
            continue
        uv, *_ = np.linalg.lstsq(np.array([B - A, C - A]).T, x - A, rcond=None)
        bary = np.array([1.0 - uv.sum(), uv[0], uv[1]])
        if bary.min() < -eps:
            continue
        bary = np.clip(bary, 0.0, None)
        bary /= bary.sum()
        nz = [k for k in range(3) if bary[k] > eps]
        if len(nz) == 1:
            return SurfacePoint.at_vertex(tri[nz[0]])
        if len(nz) == 2:
            i, j = nz
            return SurfacePoint.on_edge(tri[i], tri[j], bary[j] / (bary[i] + bary[j]))
        return SurfacePoint.in_face(tri, bary)
    raise ConeCurveError(f"point {x.tolist()} is not on the surface")


def geodesic_polygon(s: IntrinsicSurface, corners: Sequence[SurfacePoint]) -> List[SurfacePoint]:
    """Waypoints of the closed curve joining the corners by shortest paths."""
    out: List[SurfacePoint] = []
    n = len(corners)
    for i in range(n):
        out.extend(shortest_path(s, corners[i], corners[(i + 1) % n]).points[:-1])
    return out


def corner_indices(wps: Sequence[SurfacePoint], corners: Sequence[SurfacePoint]) -> List[int]:
    keys = [p.key() for p in wps]
    return [keys.index(c.key()) for c in corners]


def _orient_left(c: SurfaceCurve, want_left: int) -> SurfaceCurve:
    """Reverse c unless vertex want_left lies to its left."""
    rep = curvature_partition(c)
    if want_left in rep.left_vertices:
        return c
    r = c.reversed()
    if want_left not in curvature_partition(r).left_vertices:
        raise ConeCurveError(f"vertex {want_left} is on neither side")
    return r


# --------------------------------------------------------------------------
# house


def _house_points(X, Y, W, h, r):
    return [(-X, -Y, 0), (X, -Y, 0), (X, Y, 0), (-X, Y, 0),
            (-X, -Y, W), (X, -Y, W), (X, Y, W), (-X, Y, W),
            (-r, 0, W + h), (r, 0, W + h)]


def house_geometry(width: float, depth: float, wall: float = 1.0, rise: Optional[float] = 1.0,
                   ridge: Optional[float] = None) -> Dict[str, float]:
    """Roof dimensions putting curvature pi/2 at both ridge ends.

    Give the rise to solve for the half ridge length, or the half ridge
    length (with ``rise=None``) to solve for the rise.
    """
    X, Y = width / 2.0, depth / 2.0

    def excess(r, h):
        s, _ = hull_surface(_house_points(X, Y, wall, h, r))
        return s.curvature(8) - PI / 2

    if rise is not None:
        h = rise
        r = brentq(lambda r: excess(r, h), 1e-3 * X, X * (1 - 1e-9), xtol=1e-15, rtol=1e-15)
    else:
        r = ridge
        h = brentq(lambda h: excess(r, h), 1e-2, 1e3, xtol=1e-15, rtol=1e-15)
    return {"X": X, "Y": Y, "W": wall, "h": h, "r": r}


def _hip(g, sx, sy, t):
    A = np.array([sx * g["X"], sy * g["Y"], g["W"]])
    B = np.array([sx * g["r"], 0.0, g["W"] + g["h"]])
    return A + t * (B - A)


def _roof(g, x, y):
    """Roof point above (x, y); the roof is the lower envelope of its four planes."""
    X, Y, W, h, r = g["X"], g["Y"], g["W"], g["h"], g["r"]
    z_side = W + h * (1 - abs(y) / Y)
    z_end = W + h * (X - abs(x)) / (X - r)
    return np.array([x, y, min(z_side, z_end)])


def house() -> GalleryItem:
    g = house_geometry(3.0, math.sqrt(2.0))
    s, P = hull_surface(_house_points(g["X"], g["Y"], g["W"], g["h"], g["r"]))
    # corners halfway up the hips, listed counterclockwise seen from above
    pts = [_hip(g, -1, 1, 0.5), _hip(g, -1, -1, 0.5), _hip(g, 1, -1, 0.5), _hip(g, 1, 1, 0.5)]
    corners = [locate(P, s, p) for p in pts]
    c = _orient_left(SurfaceCurve(s, geodesic_polygon(s, corners)), 8)
    ex = {
        "corner_left_angle": Expect(0.75 * PI, "reference"),
        "corner_right_angle": Expect(1.25 * PI, "reference", "2*pi minus the left angle; no vertex on the curve"),
        "ridge_curvature": Expect(0.5 * PI, "reference"),
        "omega_left": Expect(PI, "reference"),
        "tau_left": Expect(PI, "derived", "four corners turning pi/4"),
        "classes": Expect(["convex left", "reflex right"], "derived", "side angles at every corner"),
        "left_cone": Expect({"variant": "proper", "apex_angle": PI}, "reference"),
        "merged_curvature": Expect(PI, "reference"),
        "ridge_length": Expect(2 * g["r"], "derived", "half ridge solved for curvature pi/2 at the ridge ends"),
    }
    return GalleryItem("house", s, {"C": c}, ex, params=dict(g), extras={"ridge": [8, 9]})


# --------------------------------------------------------------------------
# house with a spike


def _spike_curve(s, P, g, tip, half_width: float, with_e: bool = False):
    a, b, c, d = (_hip(g, -1, 1, 0.5), _hip(g, -1, -1, 0.5), _hip(g, 1, -1, 0.5), _hip(g, 1, 1, 0.5))
    yb = b[1]
    zb = b[2]
    b2 = np.array([tip[0] - half_width, yb, zb])
    c2 = np.array([tip[0] + half_width, yb, zb])
    x = _roof(g, tip[0], tip[1])
    pts = [a, b, b2, x, c2, c, d]
    if with_e:
        pts.append((d + a) / 2.0)
    corners = [locate(P, s, p) for p in pts]
    wps = geodesic_polygon(s, corners)
    idx = corner_indices(wps, corners)
    return SurfaceCurve(s, wps, loop_point=idx[3]), idx


SPIKE_RIDGE = 1.0  # half length; a steeper roof sends the spike around the ridge ends
SPIKE_TIP = (0.0, 0.6)
SHORT_TIP = (0.0, 0.3)
SHIFTED_TIP = (-0.5, 0.0)


def house_with_spike(tip: Tuple[float, float] = SPIKE_TIP, shifted_tip: Tuple[float, float] = SHIFTED_TIP,
                     short_tip: Tuple[float, float] = SHORT_TIP, half_width: float = 0.25) -> GalleryItem:
    """Convex loop whose spike tip x (a point of the back roof face) reaches over the ridge.

    ``short`` pulls the tip back so the loop fits its cone; ``shifted``
    moves the spike off centre so the loop fits but is not visible from
    the apex.
    """
    g = house_geometry(3.0, 3.0, rise=None, ridge=SPIKE_RIDGE)
    s, P = hull_surface(_house_points(g["X"], g["Y"], g["W"], g["h"], g["r"]))
    c, idx = _spike_curve(s, P, g, tip, half_width)
    c2, _ = _spike_curve(s, P, g, shifted_tip, half_width)
    c3, _ = _spike_curve(s, P, g, short_tip, half_width)
    ex = {
        "omega_left": Expect(PI, "reference", "both ridge ends stay left of the curve"),
        "loop_point": Expect(idx[3], "trivial", "the spike tip"),
        "left_fit_lives_on_cone": Expect(False, "reference"),
        "left_fit_apex_enclosed": Expect(False, "reference"),
        "left_cone": Expect({"variant": "proper", "apex_angle": PI}, "derived", "total left turn 2*pi - omega_left"),
        "short_lives_on_cone": Expect(True, "reference"),
        "shifted_lives_on_cone": Expect(True, "derived", "apex enclosed by the shifted loop"),
        "shifted_visible": Expect(False, "reference"),
    }
    return GalleryItem("house_with_spike", s, {"C": c, "shifted": c2, "short": c3}, ex,
                       params={**g, "tip": list(tip), "shifted_tip": list(shifted_tip), "short_tip": list(short_tip),
                               "half_width": half_width})


# --------------------------------------------------------------------------
# doubly covered pentagon


PENTAGON = {1: (0.0, 2.0), 2: (1.0, 2.0), 3: (2.0, 1.0), 4: (2.0, 0.0), 5: (0.0, 0.0)}


def _doubled_polygon(V: Dict[int, Tuple[float, float]], top, bottom) -> IntrinsicSurface:
    tris = list(top) + list(bottom)
    lengths = {}
    for t in tris:
        for k in range(3):
            a, b = t[k], t[(k + 1) % 3]
            lengths[ekey(a, b)] = math.dist(V[a], V[b])
    return IntrinsicSurface(sorted(V), tris, lengths)


def pentagon() -> GalleryItem:
    # the two sheets use different diagonals so no edge is shared by four faces
    s = _doubled_polygon(PENTAGON, [(5, 4, 3), (5, 3, 2), (5, 2, 1)], [(4, 5, 1), (4, 1, 2), (4, 2, 3)])
    c = SurfaceCurve(s, [SurfacePoint.at_vertex(4), SurfacePoint.at_vertex(5)], fold_side="right")
    ex = {
        "curvatures": Expect({1: PI, 2: PI / 2, 3: PI / 2, 4: PI, 5: PI}, "derived",
                             "interior angles (pi/2, 3pi/4, 3pi/4, pi/2, pi/2) doubled"),
        "omega_left": Expect(2 * PI, "reference"),
        "left_cone": Expect({"variant": "cylinder", "circumference": 4.0}, "derived",
                            "length of the doubled segment v4 v5"),
        "merge_v1_v2": Expect(1.5 * PI, "reference"),
        "merge_v12_v3_rejected": Expect(True, "reference", "curvatures sum to 2*pi"),
        "right_area": Expect(0.0, "derived", "the right side of a doubled segment is empty"),
    }
    return GalleryItem("pentagon", s, {"C": c}, ex, params={"coordinates": {k: list(v) for k, v in PENTAGON.items()}})


# --------------------------------------------------------------------------
# icosahedron


def icosahedron_surface() -> IntrinsicSurface:
    phi = (1 + math.sqrt(5.0)) / 2
    pts = []
    for a in (-1, 1):
        for b in (-phi, phi):
            pts += [(0, a, b), (a, b, 0), (b, 0, a)]
    s, _ = hull_surface(np.array(pts, dtype=float) / 2.0)  # unit edges
    return s


def _link(s: IntrinsicSurface, v: int) -> List[int]:
    order, _ = s.star(v)
    return [s.triangles[f][(k + 1) % 3] for f, k in order]


def icosahedron() -> GalleryItem:
    s = icosahedron_surface()
    c = SurfaceCurve(s, [SurfacePoint.at_vertex(v) for v in _link(s, 0)])
    ex = {
        "vertex_curvature": Expect(PI / 3, "reference"),
        "total_curvature": Expect(4 * PI, "reference"),
        "corner_angles": Expect([2 * PI / 3, PI], "reference"),
        "n_corners": Expect(5, "reference"),
        "omega_left": Expect(PI / 3, "derived", "one vertex inside"),
        "omega_curve": Expect(5 * PI / 3, "derived", "five vertices on the curve"),
        "omega_right": Expect(2 * PI, "derived", "six vertices outside"),
        "classes": Expect(["quasigeodesic"], "reference"),
        "left_cone": Expect({"variant": "proper", "apex_curvature": PI / 3}, "derived", "apex curvature omega_left"),
        "right_cone": Expect({"variant": "cylinder", "circumference": 5.0}, "reference"),
    }
    return GalleryItem("icosahedron", s, {"C": c}, ex)


# --------------------------------------------------------------------------
# cuboctahedron


def cuboctahedron_surface() -> Tuple[IntrinsicSurface, np.ndarray]:
    pts = []
    for i in range(3):
        for a in (-1, 1):
            for b in (-1, 1):
                p = [0.0, 0.0, 0.0]
                p[(i + 1) % 3], p[(i + 2) % 3] = a, b
                pts.append(p)
    P = np.array(pts, dtype=float) / math.sqrt(2.0)  # unit edges
    s, P = hull_surface(P)
    return s, P


def _vid(P: np.ndarray, x) -> int:
    x = np.asarray(x, dtype=float) / math.sqrt(2.0)
    return int(np.argmin(np.linalg.norm(P - x, axis=1)))


def cuboctahedron_hexagon() -> GalleryItem:
    s, P = cuboctahedron_surface()
    centre = _vid(P, (0, 1, 1))
    # far corners of the squares z=1 and y=1 seen from (0,1,1) are (0,-1,1) and (0,1,-1)
    ring3 = [(1, 0, 1), (0, -1, 1), (-1, 0, 1), (-1, 1, 0), (0, 1, -1), (1, 1, 0)]
    corners = [SurfacePoint.at_vertex(_vid(P, p)) for p in ring3]
    wps = geodesic_polygon(s, corners)
    c = _orient_left(SurfaceCurve(s, wps), centre)
    ex = {
        "left_angles": Expect([5 * PI / 6, 5 * PI / 6, PI / 2, 5 * PI / 6, 5 * PI / 6, PI / 2], "reference"),
        "right_angles": Expect([5 * PI / 6, 5 * PI / 6, 7 * PI / 6, 5 * PI / 6, 5 * PI / 6, 7 * PI / 6], "reference"),
        "classes": Expect({"left": "convex", "right": "unclassified"}, "reference"),
        "omega_left": Expect(PI / 3, "derived", "one vertex inside"),
    }
    return GalleryItem("cuboctahedron_hexagon", s, {"C": c}, ex, extras={"centre": centre})


LOOP_C1_Z = 0.0
LOOP_C2 = (1.0, 0.0, -0.6)


def cuboctahedron_loop(c1_z: float = LOOP_C1_Z, c2=LOOP_C2) -> GalleryItem:
    """Five-corner loop through the vertex (0,1,1) around the vertices (1,0,1) and (1,1,0).

    Swapping y and z maps the loop to itself reversed; with c1 on the
    diagonal of the square y=1 through (0,1,1), that symmetry splits the
    vertex angle 5*pi/3 evenly.
    """
    s, P = cuboctahedron_surface()
    sq = math.sqrt(2.0)
    W = np.array([0.0, 1.0, 1.0])
    c1 = np.array([0.0, 1.0, c1_z])
    c2 = np.array(c2, dtype=float)
    c3 = c2[[0, 2, 1]]
    c4 = c1[[0, 2, 1]]
    pts = [c1, c2, c3, c4, W]
    corners = [locate(P, s, p / sq) for p in pts]
    wps = geodesic_polygon(s, corners)
    c = _orient_left(SurfaceCurve(s, wps), _vid(P, (1, 0, 1)))
    idx = corner_indices(c.waypoints, corners)
    c = SurfaceCurve(s, c.waypoints, loop_point=idx[4])
    ex = {
        "alpha_5": Expect(5 * PI / 6, "reference"),
        "beta_5": Expect(5 * PI / 6, "reference"),
        "omega_left": Expect(2 * PI / 3, "reference"),
        "omega_curve": Expect(PI / 3, "reference"),
        "omega_right": Expect(3 * PI, "reference"),
        "right_cone": Expect({"variant": "proper", "apex_curvature": PI}, "reference"),
        "right_apex_side": Expect("left", "reference"),
        "classes": Expect({"left": "convex", "right": "reflex loop"}, "reference"),
    }
    return GalleryItem("cuboctahedron_loop", s, {"C": c}, ex,
                       params={"c1_z": c1_z, "c2": list(map(float, c2)), "vertex_waypoint": idx[4]},
                       extras={"enclosed": [_vid(P, (1, 0, 1)), _vid(P, (1, 1, 0))]})


# --------------------------------------------------------------------------
# quasigeodesic loop glued from the spike house and a planar polygon


def convex_polygon(lengths: Sequence[float], fixed: Dict[int, float], margin: float = 1e-3,
                   restarts: int = 32) -> List[geo.Point]:
    """Counterclockwise convex polygon with the given side lengths.

    Side k runs from vertex k to vertex k+1; ``fixed`` maps vertex index
    to a prescribed interior angle. Among the closing polygons, the one
    whose smallest free turn is largest is returned.
    """
    L = np.asarray(lengths, dtype=float)
    m = len(L)
    free = [k for k in range(m) if k not in fixed]
    budget = 2 * PI - sum(PI - a for a in fixed.values())

    def turns(x):
        t = np.empty(m)
        for k, a in fixed.items():
            t[k] = PI - a
        t[free] = x
        return t

    def gap(x):
        th = np.cumsum(turns(x)) - turns(x)[0]
        return np.array([np.dot(L, np.cos(th)), np.dot(L, np.sin(th))])

    scale = L.sum()

    def resid(x):
        return np.concatenate([gap(x) / scale, [x.sum() - budget]])

    def jac(x):
        t = turns(x)
        th = np.cumsum(t) - t[0]
        # heading k depends on turns 1..k; turn 0 only closes the loop
        tail_c = np.cumsum((L * np.cos(th))[::-1])[::-1]
        tail_s = np.cumsum((L * np.sin(th))[::-1])[::-1]
        full = np.vstack([-tail_s, tail_c]) / scale
        full[:, 0] = 0.0
        return np.vstack([full[:, free], np.ones(len(free))])

    # closure has many solutions: find one, then push the sharpest turn up as far as closure allows
    rng = np.random.default_rng(0)
    x = None
    for _ in range(restarts):
        x0 = np.clip(rng.dirichlet(np.ones(len(free))) * budget, 2 * margin, PI - 2 * margin)
        y = least_squares(resid, x0, jac=jac, bounds=(margin, PI - margin), xtol=1e-12, ftol=1e-12, gtol=1e-12).x
        if np.linalg.norm(resid(y)) < 1e-9:
            x = y
            break
    if x is None:
        raise ConeCurveError("no convex polygon with these sides and angles was found")
    nf = len(free)
    res = minimize(lambda z: -z[-1], np.append(x, x.min()),
                   jac=lambda z: np.append(np.zeros(nf), -1.0), method="SLSQP",
                   bounds=[(margin, PI - margin)] * nf + [(0.0, PI)],
                   constraints=[{"type": "eq", "fun": lambda z: resid(z[:-1]), "jac": lambda z: np.hstack([jac(z[:-1]), np.zeros((3, 1))])},
                                {"type": "ineq", "fun": lambda z: z[:-1] - z[-1],
                                 "jac": lambda z: np.hstack([np.eye(nf), -np.ones((nf, 1))])}],
                   options={"ftol": 1e-14, "maxiter": 500})
    if res.success and np.linalg.norm(resid(res.x[:-1])) < 1e-12:
        x = res.x[:-1]
    t = turns(x)
    if np.linalg.norm(gap(x)) > 1e-10 * L.sum() or t.min() <= 0 or t.max() >= PI:
        raise ConeCurveError("no convex polygon with these sides and angles was found")
    th = np.cumsum(t) - t[0]
    pts = [(0.0, 0.0)]
    for n in range(m - 1):
        px, py = pts[-1]
        pts.append((px + L[n] * math.cos(th[n]), py + L[n] * math.sin(th[n])))
    return pts


def qg_loop_star(tip: Tuple[float, float] = SPIKE_TIP, half_width: float = 0.25) -> GalleryItem:
    g = house_geometry(3.0, 3.0, rise=None, ridge=SPIKE_RIDGE)
    s, P = hull_surface(_house_points(g["X"], g["Y"], g["W"], g["h"], g["r"]))
    c, idx = _spike_curve(s, P, g, tip, half_width, with_e=True)
    from .curve import side_angles
    from .surgery import glue_polygon, split

    left, _ = split(c)
    m = len(idx)
    arcs = []
    lens = c.arc_lengths()
    for k in range(m):
        i0, i1 = idx[k], idx[(k + 1) % m]
        arcs.append(sum(lens[(i0 + j) % c.n] for j in range((i1 - i0) % c.n)))
    alpha_x, beta_x = side_angles(c, idx[3])
    Q = convex_polygon(arcs, {3: beta_x})
    # non-corner waypoints sit on the polygon edge of their arc, at matching arc length
    Qfull = []
    for i in range(c.n):
        k = max(kk for kk in range(m) if (i - idx[0]) % c.n >= (idx[kk] - idx[0]) % c.n)
        run = (i - idx[k]) % c.n
        t = sum(lens[(idx[k] + j) % c.n] for j in range(run)) / arcs[k]
        Qfull.append(geo.lerp(Q[k], Q[(k + 1) % m], t))
    star = glue_polygon(left, Qfull)
    # the left side keeps the curve orientation, so its boundary runs in curve order
    b = left.boundary
    cs = SurfaceCurve(star, [SurfacePoint.at_vertex(v) for v in b], loop_point=b.index(left.waypoint_ids[idx[3]]))
    ex = {
        "classes": Expect(["quasigeodesic loop"], "reference"),
        "right_cone": Expect({"variant": "planar"}, "reference"),
        "right_lives_on_cone": Expect(True, "reference"),
        "left_lives_on_cone": Expect(False, "reference"),
        "polygon_angle_at_tip": Expect(beta_x, "derived", "right angle of the spike tip on the spike house"),
    }
    return GalleryItem("qg_loop_star", star, {"C": cs}, ex,
                       params={**g, "tip": list(tip), "half_width": half_width},
                       extras={"polygon": [[float(x) for x in q] for q in Q]})


# --------------------------------------------------------------------------
# spiral on a cone


SPIRAL_ARCS = (0.5, 2.0, 2.8, 5.4)
SPIRAL_APEX = (-0.35, 0.25)  # in the frame with p1 at the origin and the first arc along +x
SPIRAL_SLANT = 8.0
SPIRAL_LOOP_RADIUS = 1.15  # p6 distance from the apex, relative to p5


def _rot(v, a: float) -> np.ndarray:
    c, s = math.cos(a), math.sin(a)
    return np.array([c * v[0] - s * v[1], s * v[0] + c * v[1]])


def _offset_chain(p: Sequence[np.ndarray], eps: float) -> List[np.ndarray]:
    """Parallel copy of an open polyline at distance eps on its right."""
    dirs = [(b - a) / np.linalg.norm(b - a) for a, b in zip(p, p[1:])]
    right = [np.array([d[1], -d[0]]) for d in dirs]
    out = [p[0] + eps * right[0]]
    for k in range(1, len(p) - 1):
        m = right[k - 1] + right[k]
        m /= np.linalg.norm(m)
        out.append(p[k] + eps / float(m @ right[k - 1]) * m)
    out.append(p[-1] + eps * right[-1])
    return out


def doubled_sector(angle: float, slant: float):
    """Cone of apex angle ``angle`` as a doubly covered isosceles triangle.

    Returns the surface, planar vertex positions (shared by both sheets)
    and the face lists of the two sheets. The apex is vertex 0.
    """
    half = angle / 2
    pos = {0: (0.0, 0.0), 1: (slant, 0.0), 2: (slant * math.cos(half), slant * math.sin(half))}
    pos[3] = tuple(np.mean([pos[0], pos[1], pos[2]], axis=0))
    top = [(0, 1, 3), (1, 2, 3), (2, 0, 3)]
    flat = IntrinsicSurface([0, 1, 2, 3], top, {ekey(a, b): math.dist(pos[a], pos[b])
                                                for t in top for a, b in zip(t, t[1:] + t[:1])})
    from .surgery import double_along_boundary

    dbl = double_along_boundary(flat)
    s = dbl.surface
    for v, m in dbl.mirror.items():
        pos[m] = pos[v]
    faces_top = [f for f, t in enumerate(s.triangles) if t in set(dbl.half.surface.triangles)]
    faces_bot = [f for f in range(len(s.triangles)) if f not in faces_top]
    return s, pos, faces_top, faces_bot


def spiral_cone(eps_rel: float = 1e-3, arcs: Sequence[float] = SPIRAL_ARCS, apex=SPIRAL_APEX,
                slant: float = SPIRAL_SLANT) -> GalleryItem:
    """Closed curve on a cone of angle 3*pi/4 whose development always overlaps.

    C' = (p1..p5) turns left by 3*pi/4 at p2, p3, p4 and winds around the
    apex without crossing itself, though its development does. The closed
    curve runs along C', loops once around the apex to p5', and returns to
    p1 along the parallel copy of C' at distance eps = eps_rel * slant.
    """
    alpha = 0.75 * PI
    eps = eps_rel * slant
    s, pos, faces_top, faces_bot = doubled_sector(alpha, slant)
    P3 = np.zeros((max(pos) + 1, 3))
    for v, xy in pos.items():
        P3[v, :2] = xy

    # lifted plane: apex at the origin, so polar angle unwrapped along the curve is the cone angle
    o = np.asarray(apex, dtype=float)
    p = [np.zeros(2)]
    h = 0.0
    for k, L in enumerate(arcs):
        if k:
            h += alpha
        p.append(p[-1] + L * np.array([math.cos(h), math.sin(h)]))
    p = [q - o for q in p]
    q = _offset_chain(p, eps)
    mid = math.atan2(p[-1][1], p[-1][0]) + alpha / 2
    p6 = SPIRAL_LOOP_RADIUS * np.linalg.norm(p[-1]) * np.array([math.cos(mid), math.sin(mid)])
    lifted = p + [p6] + [_rot(x, alpha) for x in reversed(q)]

    def on_cone(x, theta) -> SurfacePoint:
        r = float(np.linalg.norm(x))
        phi = theta % alpha
        if phi <= alpha / 2:
            return locate(P3, s, (r * math.cos(phi), r * math.sin(phi), 0.0), faces=faces_top)
        return locate(P3, s, (r * math.cos(alpha - phi), r * math.sin(alpha - phi), 0.0), faces=faces_bot)

    # split every segment so each piece subtends under pi/8 at the apex; a shortest path then follows it
    dense: List[SurfacePoint] = []
    marks: List[int] = []
    theta = math.atan2(lifted[0][1], lifted[0][0])
    for a, b in zip(lifted, lifted[1:]):
        sweep = math.atan2(a[0] * b[1] - a[1] * b[0], float(a @ b))
        k = max(1, math.ceil(abs(sweep) / (PI / 8)))
        marks.append(len(dense))
        for j in range(k):
            x = a + (b - a) * (j / k)
            dense.append(on_cone(x, theta + math.atan2(a[0] * x[1] - a[1] * x[0], float(a @ x))))
        theta += sweep
    marks.append(len(dense))
    dense.append(on_cone(lifted[-1], theta))
    wps = geodesic_polygon(s, dense)
    keys = [w.key() for w in wps]
    corner_ids = [keys.index(dense[m].key()) for m in marks]
    c = SurfaceCurve(s, wps)
    ex = {
        "apex_curvature": Expect(1.25 * PI, "trivial", "cone angle 3*pi/4"),
        "omega_left": Expect(1.25 * PI, "reference", "the apex lies inside the curve"),
        "open_turns": Expect([alpha] * 3, "reference"),
        "open_development_simple": Expect(False, "reference"),
        "simple_fraction": Expect(0.0, "reference", "every cut leaves one copy of C' whole"),
    }
    return GalleryItem("spiral_cone", s, {"C": c}, ex,
                       params={"eps_rel": eps_rel, "eps": eps, "arcs": list(arcs), "apex": list(apex),
                               "slant": slant, "cone_angle": alpha},
                       extras={"open_corners": corner_ids[:5]})


# --------------------------------------------------------------------------
# zigzag around a closed geodesic


ZIGZAG_DEPTHS = (0.08, 0.3)  # below the geodesic; the band's lower vertices are sqrt(3)/4 away


def _equator_band(s: IntrinsicSurface, top: int) -> Tuple[List[Tuple[int, int]], int]:
    """Edges crossed by the closed geodesic halfway between the rings around ``top`` and its antipode."""
    upper = set(_link(s, top))
    near = upper | {top}
    bottom = next(v for v in s.vertices if v not in near and not set(_link(s, v)) & near)
    band = [t for t in s.triangles if top not in t and bottom not in t]
    lower = set(s.vertices) - near - {bottom}
    slanted = lambda a, b: (a in upper) != (b in upper) and {a, b} <= upper | lower
    faces_of = {}
    for t in band:
        es = [ekey(t[k], t[(k + 1) % 3]) for k in range(3) if slanted(t[k], t[(k + 1) % 3])]
        for e in es:
            faces_of.setdefault(e, []).append([x for x in es if x != e][0])
    start = min(faces_of)
    order, prev = [start], None
    while True:
        nxt = [e for e in faces_of[order[-1]] if e != prev][0]
        if nxt == start:
            break
        prev = order[-1]
        order.append(nxt)
    return order, bottom


def icosa_zigzag(depths: Sequence[float] = ZIGZAG_DEPTHS) -> GalleryItem:
    """Closed geodesic C' around the icosahedron and a zigzag C just to its right.

    The strip between them holds no vertex, so C lives on the same
    cylinder as C'.
    """
    s = icosahedron_surface()
    edges, bottom = _equator_band(s, 0)
    inner = _orient_left(SurfaceCurve(s, [SurfacePoint.on_edge(a, b, 0.5) for a, b in edges]), 0)
    corners = []
    for i, m in enumerate(inner.waypoints):
        ahead = direction_angle(s, m, inner.waypoints[(i + 1) % inner.n], face=inner.arc_face(i))
        pts, _ = trace(s, m, ahead - PI / 2, depths[i % len(depths)])
        corners.append(pts[-1])
    outer = SurfaceCurve(s, geodesic_polygon(s, corners))
    ex = {
        "inner_corners": Expect(0, "derived", "straight through every edge midpoint of the band"),
        "inner_length": Expect(5.0, "derived", "ten half edges"),
        "omega_left": Expect(2 * PI, "derived", "six vertices on the side of vertex 0"),
        "inner_cone": Expect({"variant": "cylinder", "circumference": 5.0}, "derived", "holonomy of the band"),
        "outer_cone": Expect({"variant": "cylinder", "circumference": 5.0}, "reference",
                             "same cylinder as the geodesic"),
    }
    return GalleryItem("icosa_zigzag", s, {"C": outer, "geodesic": inner}, ex,
                       params={"depths": list(depths), "top": 0, "bottom": bottom})


BUILDERS: Dict[str, Callable[..., GalleryItem]] = {
    "house": house,
    "house_with_spike": house_with_spike,
    "pentagon": pentagon,
    "icosahedron": icosahedron,
    "cuboctahedron_hexagon": cuboctahedron_hexagon,
    "cuboctahedron_loop": cuboctahedron_loop,
    "qg_loop_star": qg_loop_star,
    "spiral_cone": spiral_cone,
    "icosa_zigzag": icosa_zigzag,
}


def build(name: str, **params) -> GalleryItem:
    try:
        fn = BUILDERS[name]
    except KeyError:
        raise ConeCurveError(f"unknown gallery item {name!r}; choose from {', '.join(BUILDERS)}") from None
    return fn(**params)

"""Fitting the unique candidate cone of a curve side and checking that the curve lives on it.

The development of one side is a planar chain from x1 to x2 whose
holonomy is a rotation by the total signed turn T (a translation when
T = 0). On the cone the curve would live on, the holonomy is the rotation
about the apex, so the apex image is the rotation centre and the cone
angle is |T|:

* T = 0: a cylinder of circumference |x2 - x1|;
* |T| = 2*pi: the plane (x1 = x2);
* otherwise a proper cone of apex curvature 2*pi - |T|, with the apex to
  the left of the curve when T > 0.

The flags are then checked on a canonical development cut at the point of
the curve nearest the apex (for a cylinder, the point furthest towards the
apex at infinity). If the curve lives on the cone, the generator through
that point crosses the curve nowhere else.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import linprog

from . import geometry as geo
from .config import DEFAULT_TOL
from .curve import SurfaceCurve, check_valid, classify, corners, curvature_partition, side_name
from .develop import Development, cut_point, develop_curve, side_turn
from .errors import PreconditionError
from .surface import SurfacePoint

TWO_PI = 2.0 * math.pi
ANGLE_TOL = 1e-7  # holonomy angles accumulate the error of every corner


@dataclass(frozen=True)
class Cone:
    variant: str  # "proper", "cylinder" or "planar"
    apex_angle: float = 0.0
    circumference: float = 0.0

    @property
    def apex_curvature(self) -> float:
        if self.variant == "cylinder":
            return TWO_PI
        if self.variant == "planar":
            return 0.0
        return TWO_PI - self.apex_angle

    @classmethod
    def proper(cls, apex_angle: float) -> "Cone":
        if not 0.0 < apex_angle < TWO_PI:
            raise ValueError(f"apex angle {apex_angle} outside (0, 2*pi)")
        return cls("proper", apex_angle=apex_angle)

    @classmethod
    def cylinder(cls, circumference: float) -> "Cone":
        if not circumference > 0.0:
            raise ValueError("cylinder circumference must be positive")
        return cls("cylinder", circumference=circumference)

    @classmethod
    def planar(cls) -> "Cone":
        return cls("planar", apex_angle=TWO_PI)

    def to_json(self) -> dict:
        d = {"variant": self.variant}
        if self.variant == "proper":
            d["apex_angle"] = self.apex_angle
            d["apex_curvature"] = self.apex_curvature
        elif self.variant == "cylinder":
            d["circumference"] = self.circumference
        else:
            d["apex_angle"] = TWO_PI
        return d


@dataclass
class ConePlacement:
    """Cut-independent description of a curve's waypoints on a cone.

    Proper cones: apex distance and polar increment to the next waypoint
    (mod the cone angle). Cylinders: height along the generator relative
    to waypoint 0 and circumferential increment. Planes: the planar points.
    Any per-waypoint list may be empty when the producer cannot supply it.
    """
    cone: Cone
    radii: List[float] = field(default_factory=list)
    increments: List[float] = field(default_factory=list)
    heights: List[float] = field(default_factory=list)
    planar: List[geo.Point] = field(default_factory=list)


@dataclass
class VisibilityResult:
    visible: bool
    witness: Optional[dict] = None

    def to_json(self) -> dict:
        return {"visible": self.visible, "witness": self.witness}


@dataclass
class ConeFit:
    curve: SurfaceCurve
    side: str
    cone: Optional[Cone]
    total_turn: float
    development: Development
    apex: Optional[geo.Point]
    generator: Optional[geo.Point]  # unit direction towards the apex at infinity (cylinder)
    winding_ok: bool
    cut_radii_clear: bool
    apex_enclosed: bool
    visible: bool
    apex_distance: float
    degenerate: Optional[str] = None
    visibility_witness: Optional[dict] = None
    initial_cut: Tuple[int, float] = (0, 0.5)
    apex_side: Optional[str] = None

    @property
    def lives_on_cone(self) -> bool:
        return self.cone is not None and self.winding_ok and self.cut_radii_clear and self.apex_enclosed

    def placement(self) -> ConePlacement:
        return _placement(self)

    def to_json(self) -> dict:
        return {
            "side": self.side,
            "cone": self.cone.to_json() if self.cone else None,
            "total_turn": self.total_turn,
            "apex": list(self.apex) if self.apex is not None else None,
            "generator_direction": list(self.generator) if self.generator is not None else None,
            "apex_side": self.apex_side,
            "flags": {
                "winding_ok": self.winding_ok,
                "cut_radii_clear": self.cut_radii_clear,
                "apex_enclosed": self.apex_enclosed,
                "visible": self.visible,
            },
            "lives_on_cone": self.lives_on_cone,
            "apex_distance": self.apex_distance,
            "degenerate": self.degenerate,
            "visibility_witness": self.visibility_witness,
            "development": self.development.to_json(),
        }


# --------------------------------------------------------------------------
# planar helpers


def polar_increment(a: geo.Point, p: geo.Point, q: geo.Point) -> float:
    """Signed angle swept by segment pq as seen from a, in (-pi, pi)."""
    u, v = geo.sub(p, a), geo.sub(q, a)
    return math.atan2(geo.cross(u, v), geo.dot(u, v))


def swept_angle(a: geo.Point, pts: Sequence[geo.Point]) -> float:
    return sum(polar_increment(a, pts[i], pts[i + 1]) for i in range(len(pts) - 1))


def nearest_on_chain(a: geo.Point, pts: Sequence[geo.Point]) -> Tuple[int, float, float]:
    """(segment index, parameter, distance) of the chain point nearest to a."""
    best = (0, 0.0, math.inf)
    for i in range(len(pts) - 1):
        p, q = pts[i], pts[i + 1]
        d = geo.sub(q, p)
        L2 = geo.dot(d, d)
        t = 0.0 if L2 == 0 else min(max(geo.dot(geo.sub(a, p), d) / L2, 0.0), 1.0)
        dist = geo.dist(a, geo.lerp(p, q, t))
        if dist < best[2] - 1e-15:
            best = (i, t, dist)
    return best


def _dev_segment_to_cut(d: Development, seg: int, t: float, n: int) -> Tuple[int, float]:
    """Map a parameter on development segment seg to an (arc, fraction) cut."""
    arc0, frac0 = d.cut
    if frac0 == 0.0:
        arc = (arc0 + seg) % n
        return (arc, t) if t < 1.0 - 1e-12 else ((arc + 1) % n, 0.0)
    if seg == 0:
        u = frac0 + t * (1 - frac0)
        return (arc0, u) if u < 1 - 1e-12 else ((arc0 + 1) % n, 0.0)
    if seg == len(d.points) - 2:
        return (arc0, t * frac0)
    arc = (arc0 + seg) % n
    return (arc, t) if t < 1.0 - 1e-12 else ((arc + 1) % n, 0.0)


def _chain_hits(pts, a, b, skip: set, tol: float) -> bool:
    for i in range(len(pts) - 1):
        if i in skip:
            continue
        if geo.segments_intersect(pts[i], pts[i + 1], a, b, tol):
            return True
    return False


def _kernel_center(poly: Sequence[geo.Point]) -> Tuple[Optional[geo.Point], float]:
    """Chebyshev centre of the kernel of a ccw polygon (linear program) and its radius."""
    A, b = [], []
    n = len(poly)
    for i in range(n):
        p, q = poly[i], poly[(i + 1) % n]
        ex, ey = q[0] - p[0], q[1] - p[1]
        L = math.hypot(ex, ey)
        if L == 0:
            continue
        # inside: orient(p, q, x) >= r * L  <=>  -(ex*(y-py) - ey*(x-px)) + r*L <= 0
        A.append([ey, -ex, L])
        b.append(ey * p[0] - ex * p[1])
    res = linprog(c=[0, 0, -1], A_ub=np.array(A), b_ub=np.array(b),
                  bounds=[(None, None), (None, None), (0, None)], method="highs")
    if res.status != 0:
        return None, 0.0
    x, y, r = res.x
    return (float(x), float(y)), float(r)


# --------------------------------------------------------------------------
# fitting


def _variant(T: float) -> str:
    if abs(T) < ANGLE_TOL:
        return "cylinder"
    if abs(abs(T) - TWO_PI) < ANGLE_TOL:
        return "planar"
    if abs(T) > TWO_PI:
        return "none"
    return "proper"


def _apex_of(d: Development, T: float) -> Optional[geo.Point]:
    return geo.rotation_center(d.x1, d.x2, T)


def fit_cone(c: SurfaceCurve, side: str = "left", cut=None, tol: float = DEFAULT_TOL) -> ConeFit:
    """Fit the cone c would live on to the given side and evaluate every flag."""
    side = side_name(side)
    check_valid(c, tol)
    turns = [side_turn(c, i, side) for i in range(c.n)]
    lengths = c.arc_lengths()
    initial = (0, 0.5) if cut is None else cut
    d0 = develop_curve(c, initial, side, tol, turns=turns, lengths=lengths)
    T = d0.total_turn
    kind = _variant(T)
    if kind == "proper":
        apex0 = _apex_of(d0, T)
        seg, t, _ = nearest_on_chain(apex0, d0.points)
        canon = _dev_segment_to_cut(d0, seg, t, c.n)
        d = develop_curve(c, canon, side, tol, turns=turns, lengths=lengths)
        return _fit_proper(c, side, d, T, tol, d0.cut)
    if kind == "cylinder":
        e = geo.sub(d0.x2, d0.x1)
        L = math.hypot(*e)
        if L <= tol:
            return _fit_degenerate(c, side, d0, T, "translation of zero length")
        e = geo.scale(e, 1.0 / L)
        g = geo.rotate(e, math.pi / 2 if side == "left" else -math.pi / 2)
        k = max(range(len(d0.points)), key=lambda i: geo.dot(d0.points[i], g))
        canon = _dev_segment_to_cut(d0, k, 0.0, c.n) if k < len(d0.points) - 1 else d0.cut
        d = develop_curve(c, canon, side, tol, turns=turns, lengths=lengths)
        return _fit_cylinder(c, side, d, T, tol, d0.cut)
    if kind == "planar":
        return _fit_planar(c, side, d0, T, tol)
    return _fit_degenerate(c, side, d0, T, f"total turn {T} exceeds 2*pi in magnitude")


def _fit_degenerate(c, side, d, T, note) -> ConeFit:
    return ConeFit(c, side, None, T, d, None, None, False, False, False, False, math.nan, note,
                   initial_cut=d.cut)


def _fit_proper(c, side, d: Development, T: float, tol: float, initial) -> ConeFit:
    apex = _apex_of(d, T)
    pts = d.points
    scale = max(1.0, max(abs(x) for p in pts for x in p))
    _, _, adist = nearest_on_chain(apex, pts)
    degenerate = None
    if adist <= tol * scale:
        degenerate = "apex lies on the curve"
        winding = False
    else:
        winding = abs(swept_angle(apex, pts) - T) < ANGLE_TOL
    n = len(pts) - 1
    clear = True
    for idx, x in ((0, pts[0]), (n, pts[-1])):
        skip = {0} if idx == 0 else {n - 1}
        # the radius may only touch the chain at its own cut image
        a_in = geo.lerp(apex, x, 1.0 - 1e-9)
        if _chain_hits(pts, apex, a_in, skip, tol * scale):
            clear = False
        # the first / last segment must not run back along the radius
        other_end = pts[1] if idx == 0 else pts[-2]
        if geo.point_segment_distance(other_end, apex, x) <= tol * scale:
            clear = False
    enclosed = winding and clear and degenerate is None
    vis, witness = _proper_visibility(apex, pts, T, d, c, tol) if winding else (False, None)
    apex_side = "left" if T > 0 else "right"
    cone = Cone.proper(abs(T))
    return ConeFit(c, side, cone, T, d, apex, None, winding, clear, enclosed, vis, adist, degenerate,
                   witness, initial, apex_side)


def _proper_visibility(apex, pts, T, d: Development, c: SurfaceCurve, tol):
    sgn = 1.0 if T > 0 else -1.0
    for i in range(len(pts) - 1):
        u, v = geo.sub(pts[i], apex), geo.sub(pts[i + 1], apex)
        cr = geo.cross(u, v) * sgn
        if cr <= tol * math.hypot(*u) * math.hypot(*v):
            return False, _witness_proper(apex, pts, T, i, d, c)
    return True, None


def _unwrapped_angles(apex, pts) -> List[float]:
    ang = [math.atan2(pts[0][1] - apex[1], pts[0][0] - apex[0])]
    for i in range(len(pts) - 1):
        ang.append(ang[-1] + polar_increment(apex, pts[i], pts[i + 1]))
    return ang


def generator_hits(apex, pts, T: float, psi: float) -> List[Tuple[int, float]]:
    """Crossings of the cone generator at unwrapped polar angle psi with the developed curve.

    Generators psi + k*T (k integer) are the same generator on the cone.
    Returns (segment index, parameter) pairs.
    """
    ang = _unwrapped_angles(apex, pts)
    theta = abs(T)
    out = []
    lo_all, hi_all = min(ang), max(ang)
    kmin = math.floor((lo_all - psi) / theta) - 1
    kmax = math.ceil((hi_all - psi) / theta) + 1
    for k in range(kmin, kmax + 1):
        phi = psi + k * theta
        for i in range(len(pts) - 1):
            a0, a1 = ang[i], ang[i + 1]
            lo, hi = min(a0, a1), max(a0, a1)
            if lo <= phi <= hi and a0 != a1:
                # parameter along the segment where the polar angle equals phi
                dirv = (math.cos(phi), math.sin(phi))
                r = geo.segment_param(apex, geo.add(apex, dirv), pts[i], pts[i + 1])
                t = r[1] if r is not None else 0.0
                out.append((i, min(max(t, 0.0), 1.0)))
    return out


def _witness_proper(apex, pts, T, seg, d: Development, c: SurfaceCurve) -> dict:
    ang = _unwrapped_angles(apex, pts)
    psi = 0.5 * (ang[seg] + ang[seg + 1])
    if ang[seg] == ang[seg + 1]:
        psi = ang[seg]
    hits = generator_hits(apex, pts, T, psi)
    return _witness_dict(psi, hits, pts, d, c, apex=apex)


def _witness_dict(coord, hits, pts, d, c, apex=None, direction=None) -> dict:
    out = []
    for i, t in hits:
        xy = geo.lerp(pts[i], pts[i + 1], t)
        arc, frac = _dev_segment_to_cut(d, i, t, c.n)
        sp = cut_point(c, arc, frac)
        out.append({"segment": i, "t": t, "point": list(xy), "surface_point": sp.to_json()})
    w = {"hits": out, "count": len(out)}
    if apex is not None:
        w["apex"] = list(apex)
        w["polar_angle"] = coord
    else:
        w["direction"] = list(direction)
        w["offset"] = coord
    return w


def _fit_cylinder(c, side, d: Development, T, tol, initial) -> ConeFit:
    pts = d.points
    e = geo.sub(d.x2, d.x1)
    circ = math.hypot(*e)
    e = geo.scale(e, 1.0 / circ)
    g = geo.rotate(e, math.pi / 2 if side == "left" else -math.pi / 2)
    scale = max(1.0, max(abs(x) for p in pts for x in p))
    span = 4.0 * (max(geo.dist(p, q) for p in pts for q in (pts[0], pts[-1])) + circ + 1.0)
    winding = circ > tol
    clear = True
    n = len(pts) - 1
    for idx, x in ((0, pts[0]), (n, pts[-1])):
        skip = {0} if idx == 0 else {n - 1}
        start = geo.add(x, geo.scale(g, 1e-9 * scale))
        if _chain_hits(pts, start, geo.add(x, geo.scale(g, span)), skip, tol * scale):
            clear = False
    enclosed = winding and clear
    vis, witness = True, None
    for i in range(n):
        prog = geo.dot(geo.sub(pts[i + 1], pts[i]), e)
        if prog <= tol * max(1.0, geo.dist(pts[i], pts[i + 1])):
            vis = False
            s = 0.5 * (geo.dot(pts[i], e) + geo.dot(pts[i + 1], e))
            witness = _witness_dict(s, cylinder_hits(pts, e, circ, s), pts, d, c, direction=g)
            break
    return ConeFit(c, side, Cone.cylinder(circ), T, d, None, g, winding, clear, enclosed, vis, math.inf,
                   None, witness, initial, None)


def cylinder_hits(pts, e, circ, s) -> List[Tuple[int, float]]:
    """Crossings of the generator at circumferential coordinate s (mod circ)."""
    coords = [geo.dot(p, e) for p in pts]
    out = []
    kmin = math.floor((min(coords) - s) / circ) - 1
    kmax = math.ceil((max(coords) - s) / circ) + 1
    for k in range(kmin, kmax + 1):
        target = s + k * circ
        for i in range(len(pts) - 1):
            a, b = coords[i], coords[i + 1]
            if min(a, b) <= target <= max(a, b) and a != b:
                out.append((i, (target - a) / (b - a)))
    return out


def _fit_planar(c, side, d: Development, T, tol) -> ConeFit:
    pts = d.points
    scale = max(1.0, max(abs(x) for p in pts for x in p))
    closes = geo.dist(d.x1, d.x2) <= 1e-7 * scale
    poly = pts[:-1]
    simple = closes and not geo.polyline_self_intersections(pts, closed=True, tol=tol * scale)
    area = geo.polygon_signed_area(poly)
    oriented = area * T > 0
    enclosed = closes and simple and oriented
    centre, r = (None, 0.0)
    if enclosed:
        ccw = poly if T > 0 else list(reversed(poly))
        centre, r = _kernel_center(ccw)
    visible = enclosed and centre is not None and r > tol * scale
    witness = None
    if enclosed and not visible:
        witness = {"note": "polygon kernel is empty: no point sees the whole curve"}
    return ConeFit(c, side, Cone.planar(), T, d, centre, None, closes, simple, enclosed, visible,
                   math.nan if centre is None else nearest_on_chain(centre, pts)[2], None, witness, d.cut,
                   None)


def check_visibility(fit: ConeFit) -> VisibilityResult:
    """Visibility verdict with a witness generator on failure."""
    if fit.cone is None:
        raise PreconditionError("fit has no cone")
    if not fit.winding_ok:
        raise PreconditionError("visibility needs a fit whose winding matches the cone angle")
    return VisibilityResult(fit.visible, fit.visibility_witness)


def visibility_by_rays(fit: ConeFit, n_rays: int = 10_000) -> bool:
    """Brute-force verdict: every one of n generators meets the curve exactly once."""
    pts = fit.development.points
    if fit.cone.variant == "proper":
        coords = np.array(_unwrapped_angles(fit.apex, pts))
        period = abs(fit.total_turn)
        step = period * (1 if fit.total_turn > 0 else -1)
    elif fit.cone.variant == "cylinder":
        e = geo.sub(fit.development.x2, fit.development.x1)
        period = math.hypot(*e)
        e = geo.scale(e, 1.0 / period)
        coords = np.array([geo.dot(p, e) for p in pts])
        step = period
    else:
        raise PreconditionError("ray oracle applies to proper cones and cylinders")
    # generator positions offset by an irrational fraction so none passes through a developed point
    rays = coords[0] + (np.arange(n_rays) + 0.5 + 1e-3 * math.sqrt(2)) / n_rays * step
    a, b = coords[:-1], coords[1:]
    moving = a != b
    lo, hi = np.minimum(a, b)[moving], np.maximum(a, b)[moving]
    # copies psi + k*period of each generator inside [lo, hi]
    counts = (np.floor((hi[:, None] - rays[None, :]) / period)
              - np.ceil((lo[:, None] - rays[None, :]) / period) + 1).sum(axis=0)
    return bool(np.all(counts == 1))


# --------------------------------------------------------------------------
# congruence


def _waypoint_chain(d: Development):
    """Planar positions of waypoints in development order, starting after the cut."""
    out = []
    for p, i in zip(d.points, d.indices):
        if i is not None:
            out.append((i, p))
    if d.cut[1] == 0.0:
        out = out[:-1]
    return out


def _placement(fit: ConeFit) -> ConePlacement:
    return development_placement(fit.development, fit.curve.n, fit.cone, fit.total_turn,
                                 apex=fit.apex, generator=fit.generator)


def development_placement(d: Development, n: int, cone: Cone, T: float, apex: Optional[geo.Point] = None,
                          generator: Optional[geo.Point] = None) -> ConePlacement:
    """Waypoint placement read off a development with a known apex or generator direction."""
    pts = d.points
    if cone.variant == "proper":
        ang = _unwrapped_angles(apex, pts)
        theta = abs(T)
        pos = {}
        for k, (p, i) in enumerate(zip(pts, d.indices)):
            if i is not None and i not in pos:
                pos[i] = (geo.dist(apex, p), ang[k])
        radii = [pos[i][0] for i in range(n)]
        incs = []
        for i in range(n):
            da = (pos[(i + 1) % n][1] - pos[i][1]) * (1 if T > 0 else -1)
            incs.append(da % theta)
        return ConePlacement(cone, radii=radii, increments=incs)
    if cone.variant == "cylinder":
        e = geo.sub(d.x2, d.x1)
        circ = math.hypot(*e)
        e = geo.scale(e, 1.0 / circ)
        pos = {}
        for p, i in zip(pts, d.indices):
            if i is not None and i not in pos:
                pos[i] = (geo.dot(p, generator), geo.dot(p, e))
        h0 = pos[0][0]
        heights = [pos[i][0] - h0 for i in range(n)]
        incs = [(pos[(i + 1) % n][1] - pos[i][1]) % circ for i in range(n)]
        return ConePlacement(cone, increments=incs, heights=heights)
    pos = {}
    for p, i in zip(pts, d.indices):
        if i is not None and i not in pos:
            pos[i] = p
    return ConePlacement(cone, planar=[pos[i] for i in range(n)])


def _close_mod(a: float, b: float, period: float, tol: float) -> bool:
    d = (a - b) % period
    return min(d, period - d) <= tol


def cone_congruent(a, b, tol: float = 1e-9) -> bool:
    """Same cone variant and size, and the same waypoint placement where both provide one."""
    pa = a.placement() if isinstance(a, ConeFit) else a
    pb = b.placement() if isinstance(b, ConeFit) else b
    ca, cb = pa.cone, pb.cone
    if ca is None or cb is None or ca.variant != cb.variant:
        return False
    if ca.variant == "proper":
        if abs(ca.apex_angle - cb.apex_angle) > tol:
            return False
        if pa.radii and pb.radii:
            if len(pa.radii) != len(pb.radii):
                return False
            if any(abs(x - y) > tol for x, y in zip(pa.radii, pb.radii)):
                return False
        if pa.increments and pb.increments:
            if any(not _close_mod(x, y, ca.apex_angle, tol) for x, y in zip(pa.increments, pb.increments)):
                return False
        return True
    if ca.variant == "cylinder":
        if abs(ca.circumference - cb.circumference) > tol:
            return False
        if pa.heights and pb.heights:
            if any(abs(x - y) > tol for x, y in zip(pa.heights, pb.heights)):
                return False
        if pa.increments and pb.increments:
            if any(not _close_mod(x, y, ca.circumference, tol) for x, y in zip(pa.increments, pb.increments)):
                return False
        return True
    if pa.planar and pb.planar:
        if len(pa.planar) != len(pb.planar):
            return False
        m = len(pa.planar)
        for i in range(m):
            for j in range(i + 1, m):
                if abs(geo.dist(pa.planar[i], pa.planar[j]) - geo.dist(pb.planar[i], pb.planar[j])) > tol:
                    return False
    return True


# --------------------------------------------------------------------------
# guaranteed classes


def guaranteed_sides(c: SurfaceCurve, tol: float = DEFAULT_TOL) -> List[str]:
    """Sides on which c provably lives on a cone whose developments are simple.

    Either both sides or none: quasigeodesics, and curves convex to one
    side whose angle on that side plus the vertex curvature stays at most
    pi at all but one corner (so the other side is reflex or a reflex loop).
    Visibility from the apex also holds on these sides, except on a reflex
    loop side carrying more than 2*pi of curvature: its apex then lies on
    the convex side and the generator through the loop point can meet the
    curve twice.
    """
    cls = classify(c, tol)
    if cls.quasigeodesic:
        return ["left", "right"]
    cds = corners(c, tol)
    for side in ("left", "right"):
        if not cls.side(side).convex:
            continue
        over = [cd for cd in cds if cd.angle(side) + cd.omega > math.pi + tol]
        if len(over) <= 1:
            return ["left", "right"]
    return []


# --------------------------------------------------------------------------
# nested curves


def nested_transfer(c_outer: SurfaceCurve, c_inner: SurfaceCurve, tol: float = DEFAULT_TOL) -> ConeFit:
    """Fit c_outer on the left cone of c_inner, after checking the annulus between them is vertex-free.

    The curves must lie on one surface; c_inner must sit in the left
    region of c_outer (or coincide with it). The annulus is the left
    region of c_outer minus the left region of c_inner; it must carry no
    curvature and contain no vertex of either curve with nonzero curvature.
    """
    if c_outer.surface is not c_inner.surface:
        raise PreconditionError("curves must lie on the same surface")
    inner_fit = fit_cone(c_inner, "left", tol=tol)
    if [p.key() for p in c_outer.waypoints] == [p.key() for p in c_inner.waypoints]:
        return inner_fit
    ro = curvature_partition(c_outer, tol)
    ri = curvature_partition(c_inner, tol)
    if not set(ri.left_vertices) <= set(ro.left_vertices):
        raise PreconditionError("inner curve is not nested inside the left side of the outer curve")
    s = c_outer.surface
    annulus = (set(ro.left_vertices) | set(ro.curve_vertices)) - set(ri.left_vertices)
    bad = [v for v in sorted(annulus) if abs(s.curvature(v)) > tol]
    if bad:
        raise PreconditionError(f"annulus between the curves contains curved vertices {bad}")
    outer_fit = fit_cone(c_outer, "left", tol=tol)
    if outer_fit.cone is None or not cone_congruent(ConePlacement(outer_fit.cone), ConePlacement(inner_fit.cone), 1e-7):
        raise PreconditionError("outer curve does not develop onto the inner curve's cone")
    return outer_fit

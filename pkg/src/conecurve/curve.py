"""Directed closed curves on intrinsic surfaces.

A curve is a cyclic list of waypoints; consecutive waypoints share a face
and are joined by the straight segment in that face. Side angles are read
off the polar coordinates around each waypoint (see ``local``), so a
waypoint at a vertex sees the vertex's full angle sum split by the
incoming and outgoing arcs.

A doubled segment such as ``(v4, v5)`` folds back at both ends. At a fold
one side gets the whole angle and the other gets zero; ``fold_side`` names
the side that collapses (reversing the curve swaps it).
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, replace
from typing import Dict, List, Optional, Sequence, Tuple

from . import geometry as geo
from .config import DEFAULT_TOL
from .errors import CurveError
from .local import direction_angle, sectors
from .mesh_edit import arc_edge, chain_sides, insert_chain
from .surface import IntrinsicSurface, SurfacePoint, ekey

TWO_PI = 2.0 * math.pi
SIDES = ("left", "right")


def side_name(side: str) -> str:
    s = side.lower()
    if s in ("l", "left"):
        return "left"
    if s in ("r", "right"):
        return "right"
    raise ValueError(f"side must be left or right, got {side!r}")


def other(side: str) -> str:
    return "right" if side_name(side) == "left" else "left"


@dataclass(frozen=True)
class SurfaceCurve:
    surface: IntrinsicSurface
    waypoints: Tuple[SurfacePoint, ...]
    loop_point: Optional[int] = None
    fold_side: str = "right"
    closed: bool = True

    def __post_init__(self):
        object.__setattr__(self, "waypoints", tuple(self.waypoints))

    @property
    def n(self) -> int:
        return len(self.waypoints)

    def arc(self, i: int) -> Tuple[SurfacePoint, SurfacePoint]:
        return self.waypoints[i % self.n], self.waypoints[(i + 1) % self.n]

    def arc_face(self, i: int) -> int:
        p, q = self.arc(i)
        faces = self.surface.common_faces(p, q)
        if not faces:
            raise CurveError(f"arc {i} ({p} -> {q}) has no common face")
        return faces[0]

    def arc_length(self, i: int) -> float:
        p, q = self.arc(i)
        return self.surface.distance_in_face(p, q, self.arc_face(i))

    def arc_lengths(self) -> List[float]:
        return [self.arc_length(i) for i in range(self.n)]

    def length(self) -> float:
        return sum(self.arc_lengths())

    def reversed(self) -> "SurfaceCurve":
        wps = (self.waypoints[0],) + tuple(reversed(self.waypoints[1:]))
        lp = None if self.loop_point is None else (-self.loop_point) % self.n
        return SurfaceCurve(self.surface, wps, lp, other(self.fold_side), self.closed)

    def rotated(self, k: int) -> "SurfaceCurve":
        k %= self.n
        wps = self.waypoints[k:] + self.waypoints[:k]
        lp = None if self.loop_point is None else (self.loop_point - k) % self.n
        return replace(self, waypoints=wps, loop_point=lp)

    def point_at(self, u: float) -> Tuple[int, float]:
        """Arc index and fraction for arc-length parameter u in [0, 1)."""
        lens = self.arc_lengths()
        total = sum(lens)
        target = (u % 1.0) * total
        acc = 0.0
        for i, L in enumerate(lens):
            if target < acc + L or i == self.n - 1:
                return i, min(max((target - acc) / L, 0.0), 1.0)
            acc += L
        return self.n - 1, 0.0

    def to_json(self) -> dict:
        d = {"waypoints": [p.to_json() for p in self.waypoints]}
        if self.loop_point is not None:
            d["loop_point"] = self.loop_point
        if self.fold_side != "right":
            d["fold_side"] = self.fold_side
        return d

    @classmethod
    def from_json(cls, surface: IntrinsicSurface, d: dict) -> "SurfaceCurve":
        wps = [SurfacePoint.from_json(w) for w in d["waypoints"]]
        return cls(surface, wps, d.get("loop_point"), side_name(d.get("fold_side", "right")),
                   bool(d.get("closed", True)))

    @classmethod
    def load(cls, surface: IntrinsicSurface, path) -> "SurfaceCurve":
        with open(path) as fh:
            return cls.from_json(surface, json.load(fh))


@dataclass
class CornerData:
    index: int
    point: SurfacePoint
    alpha: float
    beta: float
    omega: float

    @property
    def tau_left(self) -> float:
        return math.pi - self.alpha

    @property
    def tau_right(self) -> float:
        return math.pi - self.beta

    def angle(self, side: str) -> float:
        return self.alpha if side_name(side) == "left" else self.beta

    def to_json(self) -> dict:
        return {"index": self.index, "point": self.point.to_json(), "alpha": self.alpha,
                "beta": self.beta, "omega": self.omega, "tau_left": self.tau_left}


@dataclass
class CurveValidation:
    violations: List[str] = field(default_factory=list)
    corners: List[int] = field(default_factory=list)
    folds: List[int] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {"ok": self.ok, "violations": list(self.violations), "corners": list(self.corners),
                "folds": list(self.folds)}


# --------------------------------------------------------------------------
# angles


def _arc_faces(c: SurfaceCurve, i: int) -> List[int]:
    p, q = c.arc(i)
    return c.surface.common_faces(p, q)


def side_angles(c: SurfaceCurve, i: int) -> Tuple[float, float]:
    """(L, R) at waypoint i: surface angle to the left and to the right."""
    if not 0 <= i < c.n:
        raise IndexError(f"waypoint index {i} out of range 0..{c.n - 1}")
    s = c.surface
    p = c.waypoints[i]
    prv, nxt = c.waypoints[i - 1], c.waypoints[(i + 1) % c.n]
    _, total = sectors(s, p)
    th_out = direction_angle(s, p, nxt, face=c.arc_face(i))
    th_back = direction_angle(s, p, prv, face=c.arc_face(i - 1))
    L = (th_back - th_out) % total
    if min(L, total - L) < 1e-12:
        L = 0.0 if c.fold_side == "left" else total
        # a fold: prv and nxt leave in the same direction
    return L, total - L


def is_fold(c: SurfaceCurve, i: int) -> bool:
    s = c.surface
    p = c.waypoints[i]
    prv, nxt = c.waypoints[i - 1], c.waypoints[(i + 1) % c.n]
    _, total = sectors(s, p)
    d = (direction_angle(s, p, prv, face=c.arc_face(i - 1)) - direction_angle(s, p, nxt, face=c.arc_face(i))) % total
    return min(d, total - d) < 1e-12


def waypoint_curvature(c: SurfaceCurve, i: int) -> float:
    p = c.waypoints[i]
    if p.kind != "vertex":
        return 0.0
    return c.surface.curvature(p.vertex)


def corners(c: SurfaceCurve, tol: float = DEFAULT_TOL) -> List[CornerData]:
    out = []
    for i in range(c.n):
        L, R = side_angles(c, i)
        if abs(L - math.pi) > tol or abs(R - math.pi) > tol:
            out.append(CornerData(i, c.waypoints[i], L, R, waypoint_curvature(c, i)))
    return out


def all_points(c: SurfaceCurve) -> List[CornerData]:
    """Angle data at every waypoint, corners or not."""
    out = []
    for i in range(c.n):
        L, R = side_angles(c, i)
        out.append(CornerData(i, c.waypoints[i], L, R, waypoint_curvature(c, i)))
    return out


# --------------------------------------------------------------------------
# validation


def _segments_in_face(c: SurfaceCurve):
    """Per face, the arcs lying in it as (arc index, planar segment)."""
    s = c.surface
    per_face: Dict[int, List[Tuple[int, geo.Point, geo.Point]]] = {}
    for i in range(c.n if c.closed else c.n - 1):
        p, q = c.arc(i)
        for f in s.common_faces(p, q):
            per_face.setdefault(f, []).append((i, s.coords_in_face(p, f), s.coords_in_face(q, f)))
    return per_face


def validate_curve(c: SurfaceCurve, tol: float = DEFAULT_TOL) -> CurveValidation:
    rep = CurveValidation()
    s = c.surface
    if not c.closed:
        rep.violations.append("curve is not closed: the last waypoint must connect back to the first")
        return rep
    if c.n < 2:
        rep.violations.append("a closed curve needs at least two waypoints")
        return rep
    for i, p in enumerate(c.waypoints):
        try:
            s.point_faces(p)
        except Exception as exc:  # unknown vertex/edge/face
            rep.violations.append(f"waypoint {i}: {exc}")
    if rep.violations:
        return rep
    keys = {}
    for i, p in enumerate(c.waypoints):
        k = p.key()
        if k in keys:
            rep.violations.append(f"simplicity: waypoints {keys[k]} and {i} coincide")
        keys[k] = i
    for i in range(c.n):
        p, q = c.arc(i)
        if not s.common_faces(p, q):
            rep.violations.append(f"arc {i}: waypoints {p} and {q} share no face")
        elif p.key() == q.key():
            rep.violations.append(f"arc {i} has zero length")
    if rep.violations:
        return rep
    # pairwise arc intersections inside each face
    n = c.n
    for f, segs in _segments_in_face(c).items():
        for a in range(len(segs)):
            for b in range(a + 1, len(segs)):
                i, p0, p1 = segs[a]
                j, q0, q1 = segs[b]
                if i == j:
                    continue
                adjacent = (j - i) % n in (1, n - 1)
                if adjacent:
                    continue
                if geo.segments_intersect(p0, p1, q0, q1, tol):
                    msg = f"simplicity: arcs {i} and {j} intersect"
                    if msg not in rep.violations:
                        rep.violations.append(msg)
    if rep.violations:
        return rep
    for i in range(n):
        if is_fold(c, i):
            rep.folds.append(i)
    if rep.folds and n > 2:
        rep.violations.append(f"curve folds back on itself at waypoints {rep.folds}")
        return rep
    rep.corners = [cd.index for cd in corners(c, tol)]
    return rep


def check_valid(c: SurfaceCurve, tol: float = DEFAULT_TOL) -> CurveValidation:
    rep = validate_curve(c, tol)
    if not rep.ok:
        raise CurveError("; ".join(rep.violations))
    return rep


# --------------------------------------------------------------------------
# curvature partition


@dataclass
class CurvatureReport:
    omega_left: float
    omega_curve: float
    omega_right: float
    tau_left: float
    tau_right: float
    corners: List[CornerData]
    left_vertices: List[int]
    curve_vertices: List[int]
    right_vertices: List[int]

    def omega(self, side: str) -> float:
        return self.omega_left if side_name(side) == "left" else self.omega_right

    def tau(self, side: str) -> float:
        return self.tau_left if side_name(side) == "left" else self.tau_right

    def identities(self) -> Dict[str, float]:
        return {
            "total": self.omega_left + self.omega_curve + self.omega_right - 2 * TWO_PI,
            "left": self.tau_left + self.omega_left - TWO_PI,
            "right": self.tau_right + self.omega_right - TWO_PI,
        }

    def to_json(self) -> dict:
        return {
            "omega_left": self.omega_left, "omega_curve": self.omega_curve, "omega_right": self.omega_right,
            "tau_left": self.tau_left, "tau_right": self.tau_right,
            "left_vertices": self.left_vertices, "curve_vertices": self.curve_vertices,
            "right_vertices": self.right_vertices,
            "corners": [cd.to_json() for cd in self.corners],
            "identity_residuals": self.identities(),
        }


def side_faces(c: SurfaceCurve):
    """Insert the curve into the mesh and return (surface, chain ids, left faces, right faces)."""
    ins = insert_chain(c.surface, c.waypoints, closed=True, subdivide=True)
    left, right = chain_sides(ins.surface, ins.ids, True)
    return ins, left, right


def curvature_partition(c: SurfaceCurve, tol: float = DEFAULT_TOL) -> CurvatureReport:
    check_valid(c, tol)
    s = c.surface
    ins, left, right = side_faces(c)
    on_curve = {p.vertex for p in c.waypoints if p.kind == "vertex"}
    lv, rv = set(), set()
    for f in left:
        lv.update(ins.surface.triangles[f])
    for f in right:
        rv.update(ins.surface.triangles[f])
    orig = set(s.vertices)
    lv = sorted((lv & orig) - on_curve)
    rv = sorted((rv & orig) - on_curve - set(lv))
    missing = orig - on_curve - set(lv) - set(rv)
    if missing:
        raise CurveError(f"vertices {sorted(missing)} fall on neither side")
    cds = corners(c, tol)
    return CurvatureReport(
        omega_left=sum(s.curvature(v) for v in lv),
        omega_curve=sum(s.curvature(v) for v in sorted(on_curve)),
        omega_right=sum(s.curvature(v) for v in rv),
        tau_left=sum(cd.tau_left for cd in cds),
        tau_right=sum(cd.tau_right for cd in cds),
        corners=cds,
        left_vertices=lv,
        curve_vertices=sorted(on_curve),
        right_vertices=rv,
    )


# --------------------------------------------------------------------------
# classification


@dataclass
class SideClass:
    side: str
    convex: bool
    convex_loop: bool
    convex_loop_point: Optional[int]
    reflex: bool
    reflex_loop: bool
    reflex_loop_point: Optional[int]

    @property
    def unclassified(self) -> bool:
        return not (self.convex_loop or self.reflex_loop)

    def to_json(self) -> dict:
        return {"convex": self.convex, "convex_loop": self.convex_loop,
                "convex_loop_point": self.convex_loop_point, "reflex": self.reflex,
                "reflex_loop": self.reflex_loop, "reflex_loop_point": self.reflex_loop_point,
                "unclassified": self.unclassified}


@dataclass
class CurveClassification:
    geodesic: bool
    geodesic_loop: bool
    geodesic_loop_point: Optional[int]
    quasigeodesic: bool
    quasigeodesic_loop: bool
    quasigeodesic_loop_point: Optional[int]
    left: SideClass
    right: SideClass
    loop_point_mismatch: Optional[str] = None

    def side(self, side: str) -> SideClass:
        return self.left if side_name(side) == "left" else self.right

    @property
    def convex_left(self):
        return self.left.convex

    @property
    def convex_right(self):
        return self.right.convex

    @property
    def reflex_left(self):
        return self.left.reflex

    @property
    def reflex_right(self):
        return self.right.reflex

    def names(self) -> List[str]:
        """Class names that hold, most specific first."""
        out = []
        for flag, name in ((self.geodesic, "geodesic"), (self.geodesic_loop and not self.geodesic, "geodesic loop"),
                           (self.quasigeodesic, "quasigeodesic"),
                           (self.quasigeodesic_loop and not self.quasigeodesic, "quasigeodesic loop")):
            if flag:
                out.append(name)
        for sc in (self.left, self.right):
            if sc.convex:
                out.append(f"convex {sc.side}")
            elif sc.convex_loop:
                out.append(f"convex loop {sc.side}")
            if sc.reflex:
                out.append(f"reflex {sc.side}")
            elif sc.reflex_loop:
                out.append(f"reflex loop {sc.side}")
            if sc.unclassified:
                out.append(f"unclassified {sc.side}")
        return out

    def to_json(self) -> dict:
        return {
            "geodesic": self.geodesic, "geodesic_loop": self.geodesic_loop,
            "geodesic_loop_point": self.geodesic_loop_point,
            "quasigeodesic": self.quasigeodesic, "quasigeodesic_loop": self.quasigeodesic_loop,
            "quasigeodesic_loop_point": self.quasigeodesic_loop_point,
            "left": self.left.to_json(), "right": self.right.to_json(),
            "classes": self.names(),
            "loop_point_mismatch": self.loop_point_mismatch,
        }


def _loop(violators: List[int], declared: Optional[int]):
    """(holds, holds as loop, loop point) for a list of violating indices."""
    if not violators:
        return True, True, declared
    if len(violators) == 1:
        return False, True, violators[0]
    return False, False, None


def classify(c: SurfaceCurve, tol: float = DEFAULT_TOL) -> CurveClassification:
    check_valid(c, tol)
    pts = all_points(c)
    pi = math.pi
    lc = [d.index for d in pts if d.alpha > pi + tol]
    lr = [d.index for d in pts if d.alpha < pi - tol]
    rc = [d.index for d in pts if d.beta > pi + tol]
    rr = [d.index for d in pts if d.beta < pi - tol]
    geo_bad = [d.index for d in pts if abs(d.alpha - pi) > tol or abs(d.beta - pi) > tol]
    qg_bad = sorted(set(lc) | set(rc))
    decl = c.loop_point

    def side(name, conv_bad, refl_bad):
        cv, cvl, cvp = _loop(conv_bad, decl)
        rf, rfl, rfp = _loop(refl_bad, decl)
        return SideClass(name, cv, cvl, cvp if cvl else None, rf, rfl, rfp if rfl else None)

    g, gl, gp = _loop(geo_bad, decl)
    q, ql, qp = _loop(qg_bad, decl)
    mismatch = None
    if decl is not None:
        if not 0 <= decl < c.n:
            mismatch = f"declared loop point {decl} out of range"
        else:
            violators = {tuple(v) for v in (lc, lr, rc, rr, geo_bad, qg_bad) if len(v) == 1}
            if violators and all(v[0] != decl for v in violators):
                mismatch = f"declared loop point {decl} differs from the violating point(s) {sorted(v[0] for v in violators)}"
    return CurveClassification(g, gl, gp if gl else None, q, ql, qp if ql else None,
                               side("left", lc, lr), side("right", rc, rr), mismatch)


# --------------------------------------------------------------------------
# other-side table


@dataclass
class OtherSideRow:
    given: str        # class holding on one side, e.g. "convex left"
    holds: bool       # whether the given class holds at all
    implies: str      # class tested on the other side
    condition: bool   # whether the table's condition is met
    implied_holds: bool  # direct check of the implied class
    witnesses: List[int]

    def to_json(self) -> dict:
        return {"given": self.given, "holds": self.holds, "implies": self.implies,
                "condition": self.condition, "implied_holds": self.implied_holds,
                "witnesses": self.witnesses}


def other_side_class(c: SurfaceCurve, tol: float = DEFAULT_TOL) -> List[OtherSideRow]:
    """Evaluate the other-side conditions for both sides of c."""
    cls = classify(c, tol)
    pts = all_points(c)
    rows = []
    for s in SIDES:
        o = other(s)
        mine, theirs = cls.side(s), cls.side(o)

        def ang(d, side=s):
            return d.angle(side)

        bad = [d.index for d in pts if ang(d) + d.omega > math.pi + tol]
        rows.append(OtherSideRow(f"convex {s}", mine.convex, f"reflex {o}", not bad, theirs.reflex, bad))
        m = mine.convex_loop_point
        bad_l = [i for i in bad if i != m]
        rows.append(OtherSideRow(f"convex loop {s}", mine.convex_loop, f"reflex loop {o}",
                                 mine.convex_loop and not bad_l, theirs.reflex_loop, bad_l))
        rows.append(OtherSideRow(f"reflex {s}", mine.reflex, f"convex {o}", True, theirs.convex, []))
        m = mine.reflex_loop_point
        rows.append(OtherSideRow(f"reflex loop {s}", mine.reflex_loop, f"convex loop {o}", True,
                                 theirs.convex_loop, []))
        if mine.reflex_loop and m is not None:
            d = pts[m]
            cond = ang(d) + d.omega >= math.pi - tol
            rows.append(OtherSideRow(f"reflex loop {s}", True, f"convex {o}", cond, theirs.convex,
                                     [] if cond else [m]))
        else:
            rows.append(OtherSideRow(f"reflex loop {s}", mine.reflex_loop, f"convex {o}",
                                     mine.reflex, theirs.convex, []))
    return rows

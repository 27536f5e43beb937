"""Planar developments of curves by rolling one side of the curve on the plane.

Cutting at x, the developed chain starts at x1 = (0, 0) heading along +x
and turns, at every waypoint, by the signed left turn seen from the chosen
side: ``pi - L`` for the left side and ``R - pi`` for the right side. When
the cut is a corner its own turn is not drawn; it is kept as ``cut_turn``
so the holonomy (the rigid motion carrying the frame at x1 to the frame at
x2) is still the full rotation.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple, Union

from . import geometry as geo
from .config import DEFAULT_TOL
from .curve import SurfaceCurve, check_valid, side_angles, side_name
from .errors import CurveError
from .surface import SurfacePoint

Cut = Union[int, float, Tuple[int, float]]


@dataclass
class Development:
    side: str
    points: List[geo.Point]
    refs: List[SurfacePoint]          # surface point developed by each planar point
    indices: List[Optional[int]]      # waypoint index of each planar point (None for the cut point)
    turns: List[float]                # signed turn at every interior planar point
    cut: Tuple[int, float]            # (arc index, fraction); fraction 0 means waypoint cut
    cut_turn: float
    lengths: List[float] = field(default_factory=list)

    @property
    def x1(self) -> geo.Point:
        return self.points[0]

    @property
    def x2(self) -> geo.Point:
        return self.points[-1]

    @property
    def total_turn(self) -> float:
        return sum(self.turns) + self.cut_turn

    def end_heading(self) -> float:
        """Direction of the last segment (the first segment heads along +x)."""
        return sum(self.turns)

    def holonomy(self) -> geo.Rigid:
        """Rigid motion taking the frame at x1 to the frame at x2."""
        T = self.total_turn
        r = geo.rotate(self.x1, T)
        return geo.Rigid(T, geo.sub(self.x2, r))

    def gap_angle(self) -> float:
        """Angle from the start tangent at x1 to the end tangent at x2, in [0, 2*pi)."""
        return self.end_heading() % (2 * math.pi)

    def waypoint_points(self) -> dict:
        """Waypoint index -> planar point (first occurrence)."""
        out = {}
        for p, i in zip(self.points, self.indices):
            if i is not None and i not in out:
                out[i] = p
        return out

    def to_json(self) -> dict:
        return {
            "side": self.side,
            "cut": {"arc": self.cut[0], "fraction": self.cut[1]},
            "points": [list(p) for p in self.points],
            "waypoint_index": self.indices,
            "turns": self.turns,
            "cut_turn": self.cut_turn,
            "total_turn": self.total_turn,
            "x1": list(self.x1),
            "x2": list(self.x2),
        }


def side_turn(c: SurfaceCurve, i: int, side: str) -> float:
    L, R = side_angles(c, i)
    return math.pi - L if side_name(side) == "left" else R - math.pi


def normalize_cut(c: SurfaceCurve, cut: Cut) -> Tuple[int, float]:
    """(arc index, fraction in [0, 1)) for a waypoint index, arc tuple or global parameter."""
    if isinstance(cut, tuple):
        i, u = cut
        if not 0 <= int(i) < c.n:
            raise CurveError(f"arc index {i} out of range")
        if not 0.0 <= u < 1.0:
            raise CurveError(f"arc fraction {u} outside [0, 1)")
        return _snap(c, int(i), float(u))
    if isinstance(cut, (int,)) and not isinstance(cut, bool):
        if not 0 <= cut < c.n:
            raise CurveError(f"cut waypoint {cut} not on the curve (0..{c.n - 1})")
        return cut, 0.0
    u = float(cut)
    if not 0.0 <= u < 1.0:
        raise CurveError(f"cut parameter {u} outside [0, 1)")
    return _snap(c, *c.point_at(u))


def _snap(c: SurfaceCurve, i: int, frac: float) -> Tuple[int, float]:
    # a cut this close to a waypoint cannot be placed strictly inside the arc
    if frac <= 1e-12:
        return i, 0.0
    if frac >= 1.0 - 1e-12:
        return (i + 1) % c.n, 0.0
    return i, frac


def cut_point(c: SurfaceCurve, arc: int, frac: float) -> SurfacePoint:
    if frac == 0.0:
        return c.waypoints[arc]
    s = c.surface
    p, q = c.arc(arc)
    f = c.arc_face(arc)
    xy = geo.lerp(s.coords_in_face(p, f), s.coords_in_face(q, f), frac)
    return s.point_from_coords(f, xy, snap=0.0)


def develop_curve(c: SurfaceCurve, cut: Cut = 0, side: str = "left", tol: float = DEFAULT_TOL,
                  turns: Optional[Sequence[float]] = None, lengths: Optional[Sequence[float]] = None) -> Development:
    """Develop c on the given side, cutting at a waypoint index or arc parameter.

    ``turns``/``lengths`` may be passed to reuse per-waypoint data across
    many cuts of one curve.
    """
    side = side_name(side)
    if turns is None:
        check_valid(c, tol)
        turns = [side_turn(c, i, side) for i in range(c.n)]
    if lengths is None:
        lengths = c.arc_lengths()
    arc, frac = normalize_cut(c, cut)
    n = c.n
    pts = [(0.0, 0.0)]
    heading = 0.0
    out_turns: List[float] = []
    seg_lengths: List[float] = []
    if frac == 0.0:
        refs = [c.waypoints[arc]]
        idx: List[Optional[int]] = [arc]
        order = [(arc + k) % n for k in range(n)]
        first = lengths[arc]
        cut_turn = turns[arc]
        seq = [(first, (arc + 1) % n)] + [(lengths[j], (j + 1) % n) for j in order[1:]]
    else:
        refs = [cut_point(c, arc, frac)]
        idx = [None]
        cut_turn = 0.0
        seq = [((1 - frac) * lengths[arc], (arc + 1) % n)]
        seq += [(lengths[(arc + k) % n], (arc + k + 1) % n) for k in range(1, n)]
        seq += [(frac * lengths[arc], None)]
    for k, (L, j) in enumerate(seq):
        d = (math.cos(heading), math.sin(heading))
        pts.append(geo.add(pts[-1], geo.scale(d, L)))
        seg_lengths.append(L)
        last = k == len(seq) - 1
        if last:
            refs.append(refs[0])
            idx.append(idx[0])
        else:
            refs.append(c.waypoints[j])
            idx.append(j)
            heading += turns[j]
            out_turns.append(turns[j])
    return Development(side, pts, refs, idx, out_turns, (arc, frac), cut_turn, seg_lengths)


@dataclass
class SimplicityResult:
    simple: bool
    first_violation: Optional[Tuple[int, int]]

    def __bool__(self):
        return self.simple


def is_simple(d: Development, tol: float = DEFAULT_TOL) -> SimplicityResult:
    """Exact-predicate test over non-adjacent segment pairs of the developed chain.

    When x1 and x2 coincide the chain is treated as closed, so the first
    and last segments count as adjacent.
    """
    closed = geo.dist(d.x1, d.x2) <= tol
    hits = geo.polyline_self_intersections(d.points, closed=closed, tol=tol, first_only=True)
    if hits:
        return SimplicityResult(False, hits[0])
    return SimplicityResult(True, None)


@dataclass
class SweepRow:
    cut: Tuple[int, float]
    kind: str  # "corner", "midpoint" or "uniform"
    simple: bool
    violation: Optional[Tuple[int, int]]


def sample_cuts(c: SurfaceCurve, n_samples: int, corner_idx: Sequence[int]) -> List[Tuple[Tuple[int, float], str]]:
    if n_samples < 1:
        raise ValueError("n_samples must be at least 1")
    seen = set()
    out = []

    def add(cut, kind):
        key = (cut[0], round(cut[1], 12))
        if key not in seen:
            seen.add(key)
            out.append((cut, kind))

    for i in corner_idx:
        add((i, 0.0), "corner")
    for i in range(c.n):
        add((i, 0.5), "midpoint")
    for k in range(n_samples):
        add(normalize_cut(c, k / n_samples), "uniform")
    return out


def develop_all(c: SurfaceCurve, side: str = "left", n_samples: int = 64, tol: float = DEFAULT_TOL) -> List[SweepRow]:
    """Simplicity of the development at every corner, arc midpoint and n uniform cuts."""
    check_valid(c, tol)
    side = side_name(side)
    turns = [side_turn(c, i, side) for i in range(c.n)]
    lengths = c.arc_lengths()
    corner_idx = [i for i, t in enumerate(turns) if abs(t) > tol]
    rows = []
    for cut, kind in sample_cuts(c, n_samples, corner_idx):
        d = develop_curve(c, cut, side, tol, turns=turns, lengths=lengths)
        r = is_simple(d, tol)
        rows.append(SweepRow(cut, kind, r.simple, r.first_violation))
    return rows


def simple_fraction(rows: Sequence[SweepRow]) -> float:
    return sum(r.simple for r in rows) / len(rows) if rows else float("nan")

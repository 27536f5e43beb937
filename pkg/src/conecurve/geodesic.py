"""Exact shortest paths and straight-line tracing on intrinsic surfaces.

Shortest paths use best-first window propagation. A window is an interval
of a directed edge lit by a planar source image S through a chain of
unfolded faces. Windows are expanded in order of the lower bound
``d0 + dist(S, window)`` and dropped when they cannot beat the best target
distance found so far. Two exact pruning rules keep the search small:

* a window is discarded when one of its edge's endpoints, reached by a
  known path, gives a shorter route to every point of the window;
* vertices with angle at least 2*pi (or boundary vertices) become new
  sources, since shortest paths may bend only there.
"""
from __future__ import annotations

import heapq
import itertools
import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from . import geometry as geo
from .config import Config
from .errors import SearchBudgetExceeded, SurfaceError
from .local import direction_at
from .surface import IntrinsicSurface, SurfacePoint

TWO_PI = 2.0 * math.pi


@dataclass
class GeodesicPath:
    points: List[SurfacePoint]
    length: float
    bends: List[int] = field(default_factory=list)  # indices of points where the path bends

    def to_json(self) -> dict:
        return {"length": self.length, "waypoints": [p.to_json() for p in self.points]}


@dataclass
class _Source:
    point: SurfacePoint
    d0: float
    via: Optional["_Window"] = None  # window through which this source was reached
    pos: Optional[geo.Point] = None  # position in via's frame
    parent: Optional["_Source"] = None  # previous source on the path


@dataclass
class _Window:
    a: int
    b: int
    pa: geo.Point
    pb: geo.Point
    t0: float
    t1: float
    S: geo.Point
    src: _Source
    parent: Optional["_Window"]
    depth: int

    @property
    def d0(self):
        return self.src.d0

    def q(self, t):
        return geo.lerp(self.pa, self.pb, t)

    def lower_bound(self):
        return self.d0 + geo.point_segment_distance(self.S, self.q(self.t0), self.q(self.t1))


def _is_pseudo_source(s: IntrinsicSurface, v: int, tol: float) -> bool:
    if s.is_boundary_vertex(v):
        return True
    return s.angle_sum(v) >= TWO_PI - tol


def _point_in_frame(s: IntrinsicSurface, p: SurfacePoint, f: int, frame: Dict[int, geo.Point]) -> geo.Point:
    tri = s.triangles[f]
    return s.coords_in_face(p, f, layout=tuple(frame[v] for v in tri))


def _cross_param(S, T, pa, pb):
    r = geo.segment_param(S, T, pa, pb)
    return None if r is None else r[1]


def shortest_path(s: IntrinsicSurface, x: SurfacePoint, y: SurfacePoint, config: Optional[Config] = None,
                  max_depth: Optional[int] = None, max_expansions: Optional[int] = None) -> GeodesicPath:
    """Globally shortest path from x to y.

    Raises SearchBudgetExceeded when a window that could still improve the
    answer is cut off by the depth budget, or when the expansion budget is
    used up. Depth counts edge crossings along one straight leg.
    """
    cfg = config or Config()
    tol = cfg.tolerance
    max_depth = max_depth or cfg.max_depth
    max_expansions = max_expansions or cfg.max_expansions
    s.point_faces(x)
    y_faces = set(s.point_faces(y))
    if x.key() == y.key():
        return GeodesicPath([x], 0.0)

    scale = max(s.lengths.values())
    eps = 1e-12 * scale
    best = [math.inf, None]  # length, (window or source, target pos)
    vdist: Dict[int, float] = {}
    heap: list = []
    counter = itertools.count()
    truncated = [math.inf]

    def offer_target(d, window, src, pos):
        if d < best[0] - eps:
            best[0] = d
            best[1] = (window, src, pos)

    def start(src: _Source):
        p = src.point
        if p.kind == "vertex":
            vdist[p.vertex] = min(vdist.get(p.vertex, math.inf), src.d0)
        for f in s.point_faces(p):
            P = s.layout(f)
            frame = {v: P[k] for k, v in enumerate(s.triangles[f])}
            S = s.coords_in_face(p, f)
            if f in y_faces:
                offer_target(src.d0 + geo.dist(S, _point_in_frame(s, y, f, frame)), None, src,
                             _point_in_frame(s, y, f, frame))
            tri = s.triangles[f]
            for k in range(3):
                a, b = tri[k], tri[(k + 1) % 3]
                vd = src.d0 + geo.dist(S, frame[a])
                _reach_vertex(a, vd, None, src, frame[a])
                if abs(geo.orient(frame[a], frame[b], S)) <= eps * scale:
                    continue  # source on this edge
                w = _Window(a, b, frame[a], frame[b], 0.0, 1.0, S, src, None, 0)
                heapq.heappush(heap, (w.lower_bound(), next(counter), w))

    pending_sources: List[_Source] = []

    def _reach_vertex(v, d, window, src, pos):
        if d < vdist.get(v, math.inf) - eps:
            vdist[v] = d
            if _is_pseudo_source(s, v, tol) and not (x.kind == "vertex" and v == x.vertex):
                pending_sources.append(_Source(SurfacePoint.at_vertex(v), d, window, pos, src))

    start(_Source(x, 0.0))
    expansions = 0
    while heap or pending_sources:
        while pending_sources:
            ps = pending_sources.pop()
            if vdist.get(ps.point.vertex, math.inf) < ps.d0 - eps or ps.d0 >= best[0]:
                continue
            start(ps)
        if not heap:
            break
        lb, _, w = heapq.heappop(heap)
        if lb >= best[0] - eps:
            break
        expansions += 1
        if expansions > max_expansions:
            raise SearchBudgetExceeded(f"more than {max_expansions} window expansions")
        # endpoint dominance (exact): a known route via a or b beats the whole window
        q0, q1 = w.q(w.t0), w.q(w.t1)
        da, db = vdist.get(w.a, math.inf), vdist.get(w.b, math.inf)
        if da + geo.dist(w.pa, q1) < w.d0 + geo.dist(w.S, q1) - eps:
            continue
        if db + geo.dist(w.pb, q0) < w.d0 + geo.dist(w.S, q0) - eps:
            continue
        he = s.halfedges.get((w.b, w.a))
        if he is None or he[0] < 0:
            continue
        g = he[0]
        tri = s.triangles[g]
        c = tri[(tri.index(w.b) + 2) % 3]
        pc = geo.third_point(w.pa, w.pb, s.length(w.a, c), s.length(w.b, c), left=False)
        frame = {w.a: w.pa, w.b: w.pb, c: pc}
        if g in y_faces:
            Y = _point_in_frame(s, y, g, frame)
            t = _cross_param(w.S, Y, w.pa, w.pb)
            if t is not None and w.t0 - 1e-12 <= t <= w.t1 + 1e-12 and geo.orient(w.pa, w.pb, Y) <= eps * scale:
                offer_target(w.d0 + geo.dist(w.S, Y), w, w.src, Y)
        tc = _cross_param(w.S, pc, w.pa, w.pb)
        if tc is None:
            continue
        if w.t0 - 1e-12 <= tc <= w.t1 + 1e-12:
            _reach_vertex(c, w.d0 + geo.dist(w.S, pc), w, w.src, pc)
        if w.depth + 1 > max_depth:
            truncated[0] = min(truncated[0], lb)
            continue
        # edge a->c sees crossing params t in [0, tc]; edge c->b sees [tc, 1]
        for (u, v, pu, pv, lo, hi) in ((w.a, c, w.pa, pc, 0.0, tc), (c, w.b, pc, w.pb, tc, 1.0)):
            t_lo, t_hi = max(w.t0, lo), min(w.t1, hi)
            if t_hi - t_lo <= 1e-13:
                continue
            params = []
            for t in (t_lo, t_hi):
                r = geo.segment_param(w.S, w.q(t), pu, pv)
                params.append(None if r is None else r[1])
            if None in params:
                continue
            u0, u1 = sorted(min(max(p, 0.0), 1.0) for p in params)
            if u1 - u0 <= 1e-13:
                continue
            nw = _Window(u, v, pu, pv, u0, u1, w.S, w.src, w, w.depth + 1)
            lbn = nw.lower_bound()
            if lbn < best[0] - eps:
                heapq.heappush(heap, (lbn, next(counter), nw))

    if best[1] is None:
        if truncated[0] < math.inf:
            raise SearchBudgetExceeded(f"depth budget {max_depth} exhausted before reaching the target")
        raise SurfaceError(f"no path from {x} to {y}")
    if truncated[0] < best[0] - eps:
        raise SearchBudgetExceeded(f"depth budget {max_depth} cut off a possibly shorter path")
    window, src, pos = best[1]
    return _reconstruct(s, x, y, window, src, pos, best[0])


def _leg_points(s, window, S, T) -> List[SurfacePoint]:
    """Edge crossings of the straight segment S->T through a chain of windows."""
    out = []
    w = window
    while w is not None:
        t = _cross_param(S, T, w.pa, w.pb)
        t = min(max(t, 0.0), 1.0)
        if t <= 1e-10:
            out.append(SurfacePoint.at_vertex(w.a))
        elif t >= 1 - 1e-10:
            out.append(SurfacePoint.at_vertex(w.b))
        else:
            out.append(SurfacePoint.on_edge(w.a, w.b, t))
        w = w.parent
    out.reverse()
    return out


def _reconstruct(s, x, y, window, src, pos, length) -> GeodesicPath:
    pts = [y]
    bend_idx = []
    target_pos = pos
    cur_window, cur_src = window, src
    while True:
        if cur_window is not None:
            pts.extend(reversed(_leg_points(s, cur_window, cur_window.S, target_pos)))
        if cur_src.parent is None:
            pts.append(cur_src.point)
            break
        pts.append(cur_src.point)
        bend_idx.append(len(pts) - 1)
        target_pos = cur_src.pos
        cur_window, cur_src = cur_src.via, cur_src.parent
    pts.reverse()
    n = len(pts)
    marks = [False] * n
    for b in bend_idx:
        marks[n - 1 - b] = True
    clean, cmarks = [pts[0]], [marks[0]]
    for p, m in zip(pts[1:], marks[1:]):
        if p.key() != clean[-1].key():
            clean.append(p)
            cmarks.append(m)
        else:
            cmarks[-1] = cmarks[-1] or m
    bends = [i for i, m in enumerate(cmarks) if m and 0 < i < len(clean) - 1]
    return GeodesicPath(clean, length, bends)


def path_length(s: IntrinsicSurface, pts: Sequence[SurfacePoint]) -> float:
    return sum(s.distance_in_face(pts[i], pts[i + 1]) for i in range(len(pts) - 1))


# ---------------------------------------------------------------------------
# straight tracing


def trace(s: IntrinsicSurface, p: SurfacePoint, theta: float, length: float,
          stop_at_vertex: bool = False, tol: float = 1e-10) -> Tuple[List[SurfacePoint], float]:
    """Walk straight from p in polar direction theta for the given length.

    Returns the visited points (p, every edge crossing, end point) and the
    polar angle at the end point of the direction pointing back along the
    walk. Hitting a vertex before the end raises unless ``stop_at_vertex``.
    """
    from .local import direction_angle

    f, pos, d = direction_at(s, p, theta)
    P = s.layout(f)
    frame = {v: P[k] for k, v in enumerate(s.triangles[f])}
    pts = [p]
    remaining = length
    came_from = None  # edge we entered f through
    guard = 0
    while True:
        guard += 1
        if guard > 100000:
            raise SurfaceError("trace did not terminate")
        tri = s.triangles[f]
        best = None
        for k in range(3):
            a, b = tri[k], tri[(k + 1) % 3]
            if came_from is not None and {a, b} == set(came_from):
                continue
            end = geo.add(pos, d)
            r = geo.segment_param(pos, end, frame[a], frame[b])
            if r is None:
                continue
            lam, t = r
            if lam <= 1e-13 or t < -1e-9 or t > 1 + 1e-9:
                continue
            if best is None or lam < best[0]:
                best = (lam, a, b, t)
        if best is None:
            raise SurfaceError("trace left the face without crossing an edge")
        lam, a, b, t = best
        if remaining <= lam + tol:
            q = geo.add(pos, geo.scale(d, remaining))
            end_pt = s.point_from_coords(f, q, layout=tuple(frame[v] for v in tri), snap=1e-9)
            pts.append(end_pt)
            back_face = f
            break
        remaining -= lam
        q = geo.add(pos, geo.scale(d, lam))
        if t <= 1e-9 or t >= 1 - 1e-9:
            v = a if t <= 0.5 else b
            if stop_at_vertex:
                pts.append(SurfacePoint.at_vertex(v))
                back_face = f
                break
            raise SurfaceError(f"trace hits vertex {v}")
        pts.append(SurfacePoint.on_edge(a, b, t))
        he = s.halfedges.get((b, a))
        if he is None or he[0] < 0:
            raise SurfaceError(f"trace leaves the surface through boundary edge ({a}, {b})")
        g = he[0]
        tg = s.triangles[g]
        c = tg[(tg.index(b) + 2) % 3]
        pc = geo.third_point(frame[a], frame[b], s.length(a, c), s.length(b, c), left=False)
        frame = {a: frame[a], b: frame[b], c: pc}
        f = g
        pos = q
        came_from = (a, b)
    end = pts[-1]
    # polar angle at the end pointing back along the walk
    back_theta = direction_angle(s, end, pts[-2], face=back_face) if len(pts) >= 2 and \
        pts[-2].key() != end.key() else None
    return pts, back_theta

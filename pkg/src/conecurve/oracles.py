"""Brute-force references, independent of the fast algorithms they check."""
from __future__ import annotations

import math

from . import geometry as geo
from .surface import IntrinsicSurface, SurfacePoint


def _clip_to_wedge(X, r0, r1, pa, pb, eps=1e-12):
    """Sub-segment of pa-pb inside the convex wedge at X spanned by rays r0 and r1 (ccw)."""
    lo, hi = 0.0, 1.0
    for sa, sb in ((geo.cross(r0, geo.sub(pa, X)), geo.cross(r0, geo.sub(pb, X))),
                   (geo.cross(geo.sub(pa, X), r1), geo.cross(geo.sub(pb, X), r1))):
        # constraint sa + t*(sb - sa) >= 0, with slack relative to the edge size
        slack = eps * (abs(sa) + abs(sb) + 1.0)
        d = sb - sa
        if abs(d) < 1e-300:
            if sa < -slack:
                return None
            continue
        t = (-slack - sa) / d
        if d > 0:
            lo = max(lo, t)
        else:
            hi = min(hi, t)
        if lo > hi:
            return None
    return geo.lerp(pa, pb, max(lo, 0.0)), geo.lerp(pa, pb, min(hi, 1.0))


def facewalk_distance(s: IntrinsicSurface, x: SurfacePoint, y: SurfacePoint, depth: int = 32) -> float:
    """Minimum straight-line length over all unfolded face walks from x to y.

    Every walk is unfolded into the plane and kept only while some straight
    line from x still passes through all edges crossed so far. Only valid
    when the true shortest path crosses no vertex, which holds on surfaces
    whose vertices all have positive curvature.
    """
    y_faces = set(s.point_faces(y))
    best = math.inf

    def rec(f, frame, X, window, prev_edge, d):
        nonlocal best
        tri = s.triangles[f]
        if f in y_faces:
            Y = s.coords_in_face(y, f, layout=tuple(frame[v] for v in tri))
            if window is None:
                best = min(best, geo.dist(X, Y))
            else:
                r0, r1 = window
                v = geo.sub(Y, X)
                if geo.cross(r0, v) >= -1e-12 * geo.dist(X, Y) and geo.cross(v, r1) >= -1e-12 * geo.dist(X, Y):
                    best = min(best, geo.dist(X, Y))
        if d == depth:
            return
        for k in range(3):
            a, b = tri[k], tri[(k + 1) % 3]
            if prev_edge == {a, b}:
                continue
            he = s.halfedges.get((b, a))
            if he is None or he[0] < 0:
                continue
            g = he[0]
            pa, pb = frame[a], frame[b]
            if window is None:
                seg = (pa, pb)
            else:
                seg = _clip_to_wedge(X, window[0], window[1], pa, pb)
                if seg is None:
                    continue
            if geo.point_segment_distance(X, seg[0], seg[1]) >= best:
                continue
            r0, r1 = geo.sub(seg[0], X), geo.sub(seg[1], X)
            if geo.cross(r0, r1) < 0:
                r0, r1 = r1, r0
            tg = s.triangles[g]
            c = tg[(tg.index(b) + 2) % 3]
            pc = geo.third_point(pa, pb, s.length(a, c), s.length(b, c), left=False)
            rec(g, {a: pa, b: pb, c: pc}, X, (r0, r1), {a, b}, d + 1)

    for f in s.point_faces(x):
        P = s.layout(f)
        frame = {v: P[k] for k, v in enumerate(s.triangles[f])}
        rec(f, frame, s.coords_in_face(x, f), None, None, 0)
    return best

"""Polar coordinates around a surface point.

Around a vertex the faces of the star are laid side by side, so a
direction is an angle in [0, total) where total is the vertex's angle sum.
Around an edge point the face holding the half-edge i->j (i < j) covers
[0, pi] starting from the direction towards j, and the twin face covers
[pi, 2*pi]. A face point uses the face layout's x axis as zero.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Tuple

from . import geometry as geo
from .errors import SurfaceError
from .surface import IntrinsicSurface, SurfacePoint

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class Sector:
    face: int
    start: float      # polar angle where this face begins
    span: float
    origin: geo.Point  # p in the face's canonical layout
    ref: float        # layout angle matching polar angle ``start``


def sectors(s: IntrinsicSurface, p: SurfacePoint) -> Tuple[List[Sector], float]:
    """The faces around p as polar sectors, plus the total angle."""
    out: List[Sector] = []
    if p.kind == "vertex":
        order, _ = s.star(p.vertex)
        theta = 0.0
        for f, k in order:
            P = s.layout(f)
            a, b = P[k], P[(k + 1) % 3]
            span = s.corner_angle(f, k)
            out.append(Sector(f, theta, span, a, math.atan2(b[1] - a[1], b[0] - a[0])))
            theta += span
        return out, theta
    if p.kind == "edge":
        i, j = p.edge
        for (u, w), start in (((i, j), 0.0), ((j, i), math.pi)):
            he = s.halfedges.get((u, w))
            if he is None or he[0] < 0:
                continue
            f = he[0]
            P = s.layout(f)
            tri = s.triangles[f]
            pu, pw = P[tri.index(u)], P[tri.index(w)]
            tt = p.t if u == i else 1.0 - p.t
            origin = geo.lerp(pu, pw, tt)
            out.append(Sector(f, start, math.pi, origin, math.atan2(pw[1] - pu[1], pw[0] - pu[0])))
        if not out:
            raise SurfaceError(f"no face on edge {p.edge}")
        if len(out) == 1:
            sec = out[0]
            return [Sector(sec.face, 0.0, math.pi, sec.origin, sec.ref)], math.pi
        return out, TWO_PI
    f = s.face_index(p.tri)
    return [Sector(f, 0.0, TWO_PI, s.coords_in_face(p, f), 0.0)], TWO_PI


def direction_angle(s: IntrinsicSurface, p: SurfacePoint, q: SurfacePoint, face: int = None) -> float:
    """Polar angle at p of the straight direction towards q (sharing a face)."""
    secs, total = sectors(s, p)
    cands = [sec for sec in secs if s.point_in_face(q, sec.face)]
    if face is not None:
        cands = [sec for sec in cands if sec.face == face] or cands
    if not cands:
        raise SurfaceError(f"{q} does not share a face with {p}")
    sec = cands[0]
    xy = s.coords_in_face(q, sec.face)
    d = geo.sub(xy, sec.origin)
    if math.hypot(*d) == 0.0:
        raise SurfaceError(f"{p} and {q} coincide")
    loc = (math.atan2(d[1], d[0]) - sec.ref) % TWO_PI
    if loc > sec.span + 1e-9:
        # numerically just below zero
        loc = 0.0 if loc > math.pi + sec.span / 2 else sec.span
    loc = min(max(loc, 0.0), sec.span)
    return (sec.start + loc) % total if total > 0 else 0.0


def direction_at(s: IntrinsicSurface, p: SurfacePoint, theta: float) -> Tuple[int, geo.Point, geo.Point]:
    """Face, position and unit layout direction for polar angle theta at p."""
    secs, total = sectors(s, p)
    theta = theta % total
    best = None
    for sec in secs:
        if sec.start - 1e-12 <= theta <= sec.start + sec.span + 1e-12:
            loc = min(max(theta - sec.start, 0.0), sec.span)
            # prefer the sector where the direction points into the face interior
            margin = min(loc, sec.span - loc)
            if best is None or margin > best[0]:
                best = (margin, sec, loc)
    if best is None:
        raise SurfaceError(f"polar angle {theta} outside every sector at {p}")
    _, sec, loc = best
    ang = sec.ref + loc
    return sec.face, sec.origin, (math.cos(ang), math.sin(ang))

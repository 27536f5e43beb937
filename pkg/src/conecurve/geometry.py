"""Planar primitives: triangle angles from side lengths, orientation tests,
segment intersection and rigid motions.

Points are plain ``(x, y)`` tuples or length-2 numpy arrays; everything here
is scalar Python so it stays cheap inside the search loops.
"""
from __future__ import annotations

import cmath
import math
from typing import Optional, Sequence, Tuple

Point = Tuple[float, float]

TWO_PI = 2.0 * math.pi


def triangle_area(a: float, b: float, c: float) -> float:
    """Area from side lengths (Kahan's stable Heron formula)."""
    a, b, c = sorted((a, b, c), reverse=True)
    q = (a + (b + c)) * (c - (a - b)) * (c + (a - b)) * (a + (b - c))
    if q <= 0.0:
        return 0.0
    return 0.25 * math.sqrt(q)


def opposite_angle(a: float, b: float, c: float) -> float:
    """Angle opposite side ``a`` in a triangle with sides a, b, c.

    Uses atan2(4*area, b^2 + c^2 - a^2) rather than acos, which loses
    precision for nearly flat or nearly degenerate triangles.
    """
    return math.atan2(4.0 * triangle_area(a, b, c), b * b + c * c - a * a)


def triangle_inequality_ok(a: float, b: float, c: float, tol: float = 0.0) -> bool:
    return a > 0 and b > 0 and c > 0 and a + b > c + tol and b + c > a + tol and a + c > b + tol


def third_point(p: Point, q: Point, dp: float, dq: float, left: bool = True) -> Point:
    """Point at distance ``dp`` from p and ``dq`` from q, left of p->q if ``left``."""
    dx, dy = q[0] - p[0], q[1] - p[1]
    d = math.hypot(dx, dy)
    x = (dp * dp - dq * dq + d * d) / (2.0 * d)
    h2 = dp * dp - x * x
    h = math.sqrt(h2) if h2 > 0 else 0.0
    ux, uy = dx / d, dy / d
    if not left:
        h = -h
    return (p[0] + x * ux - h * uy, p[1] + x * uy + h * ux)


def orient(a: Point, b: Point, c: Point) -> float:
    """Twice the signed area of abc; positive when c is left of a->b."""
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])


def cross(u: Point, v: Point) -> float:
    return u[0] * v[1] - u[1] * v[0]


def dot(u: Point, v: Point) -> float:
    return u[0] * v[0] + u[1] * v[1]


def sub(a: Point, b: Point) -> Point:
    return (a[0] - b[0], a[1] - b[1])


def add(a: Point, b: Point) -> Point:
    return (a[0] + b[0], a[1] + b[1])


def scale(a: Point, s: float) -> Point:
    return (a[0] * s, a[1] * s)


def dist(a: Point, b: Point) -> float:
    return math.hypot(a[0] - b[0], a[1] - b[1])


def rotate(v: Point, angle: float) -> Point:
    c, s = math.cos(angle), math.sin(angle)
    return (c * v[0] - s * v[1], s * v[0] + c * v[1])


def lerp(a: Point, b: Point, t: float) -> Point:
    return (a[0] + (b[0] - a[0]) * t, a[1] + (b[1] - a[1]) * t)


def wrap_angle(a: float) -> float:
    """Map an angle into (-pi, pi]."""
    a = math.fmod(a, TWO_PI)
    if a <= -math.pi:
        a += TWO_PI
    elif a > math.pi:
        a -= TWO_PI
    return a


def rotation_center(p: Point, q: Point, angle: float) -> Optional[Point]:
    """Centre of the rotation by ``angle`` (ccw) taking p to q.

    Returns None for a pure translation (angle a multiple of 2*pi).
    """
    w = cmath.exp(1j * angle)
    den = 1.0 - w
    if abs(den) < 1e-14:
        return None
    c = (complex(*q) - w * complex(*p)) / den
    return (c.real, c.imag)


def segment_param(a: Point, b: Point, c: Point, d: Point) -> Optional[Tuple[float, float]]:
    """Parameters (s, t) of the intersection of lines a+s(b-a) and c+t(d-c)."""
    r = sub(b, a)
    e = sub(d, c)
    den = cross(r, e)
    if den == 0.0:
        return None
    ac = sub(c, a)
    return cross(ac, e) / den, cross(ac, r) / den


def point_segment_distance(p: Point, a: Point, b: Point) -> float:
    ab = sub(b, a)
    L2 = dot(ab, ab)
    if L2 == 0.0:
        return dist(p, a)
    t = max(0.0, min(1.0, dot(sub(p, a), ab) / L2))
    return dist(p, lerp(a, b, t))


def segment_distance(a: Point, b: Point, c: Point, d: Point) -> float:
    if segments_intersect(a, b, c, d, 0.0):
        return 0.0
    return min(point_segment_distance(a, c, d), point_segment_distance(b, c, d),
               point_segment_distance(c, a, b), point_segment_distance(d, a, b))


def segments_intersect(a: Point, b: Point, c: Point, d: Point, tol: float = 0.0) -> bool:
    """Closed-segment intersection test; touching within ``tol`` counts."""
    d1 = orient(c, d, a)
    d2 = orient(c, d, b)
    d3 = orient(a, b, c)
    d4 = orient(a, b, d)
    if ((d1 > 0 and d2 < 0) or (d1 < 0 and d2 > 0)) and ((d3 > 0 and d4 < 0) or (d3 < 0 and d4 > 0)):
        return True
    if tol <= 0.0:
        def on(p, q, r, o):
            return o == 0 and min(p[0], q[0]) <= r[0] <= max(p[0], q[0]) and min(p[1], q[1]) <= r[1] <= max(p[1], q[1])
        return on(c, d, a, d1) or on(c, d, b, d2) or on(a, b, c, d3) or on(a, b, d, d4)
    return segment_distance_nointersect(a, b, c, d) <= tol


def segment_distance_nointersect(a: Point, b: Point, c: Point, d: Point) -> float:
    return min(point_segment_distance(a, c, d), point_segment_distance(b, c, d),
               point_segment_distance(c, a, b), point_segment_distance(d, a, b))


def polyline_self_intersections(points: Sequence[Point], closed: bool = False, tol: float = 1e-9,
                                first_only: bool = True):
    """Pairs (i, j) of intersecting non-adjacent segments of a polyline.

    Segment i joins points[i] and points[i+1]. Adjacent segments only share
    their common endpoint, so they are skipped; when ``closed`` the last
    and first segments are adjacent too.
    """
    n = len(points) - 1
    out = []
    boxes = []
    for i in range(n):
        a, b = points[i], points[i + 1]
        boxes.append((min(a[0], b[0]) - tol, max(a[0], b[0]) + tol,
                      min(a[1], b[1]) - tol, max(a[1], b[1]) + tol))
    for i in range(n):
        bi = boxes[i]
        for j in range(i + 2, n):
            if closed and i == 0 and j == n - 1:
                continue
            bj = boxes[j]
            if bi[1] < bj[0] or bj[1] < bi[0] or bi[3] < bj[2] or bj[3] < bi[2]:
                continue
            if segments_intersect(points[i], points[i + 1], points[j], points[j + 1], tol):
                out.append((i, j))
                if first_only:
                    return out
    # adjacent segments folding back onto each other also overlap
    for i in range(n - 1 + (1 if closed else 0)):
        j = (i + 1) % n
        a, b, c = points[i], points[i + 1], points[j + 1]
        u, v = sub(b, a), sub(c, b)
        if abs(cross(u, v)) <= tol * (math.hypot(*u) + math.hypot(*v)) and dot(u, v) < 0:
            out.append((i, j))
            if first_only:
                return out
    return out


def polygon_signed_area(points: Sequence[Point]) -> float:
    s = 0.0
    n = len(points)
    for i in range(n):
        a, b = points[i], points[(i + 1) % n]
        s += a[0] * b[1] - a[1] * b[0]
    return 0.5 * s


def point_in_polygon(p: Point, poly: Sequence[Point]) -> bool:
    inside = False
    n = len(poly)
    for i in range(n):
        a, b = poly[i], poly[(i + 1) % n]
        if (a[1] > p[1]) != (b[1] > p[1]):
            x = a[0] + (p[1] - a[1]) * (b[0] - a[0]) / (b[1] - a[1])
            if x > p[0]:
                inside = not inside
    return inside


class Rigid:
    """Orientation-preserving planar isometry x -> R(angle) x + shift."""

    __slots__ = ("angle", "shift")

    def __init__(self, angle: float = 0.0, shift: Point = (0.0, 0.0)):
        self.angle = angle
        self.shift = shift

    def __call__(self, p: Point) -> Point:
        return add(rotate(p, self.angle), self.shift)

    @classmethod
    def from_segments(cls, a: Point, b: Point, a2: Point, b2: Point) -> "Rigid":
        """Motion taking a to a2 and the direction a->b to a2->b2."""
        ang = math.atan2(b2[1] - a2[1], b2[0] - a2[0]) - math.atan2(b[1] - a[1], b[0] - a[0])
        ra = rotate(a, ang)
        return cls(ang, sub(a2, ra))

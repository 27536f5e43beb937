"""Intrinsic surgeries: splitting along a curve, vertex merging, doubling,
iterated merging to a cone, the reflex-side cone construction and polygon
gluing.

Every operation returns new surfaces; inputs are never modified. Cuts are
made by inserting the cut path into the mesh as a chain of edges and then
duplicating the vertices along one bank, so results stay plain
``IntrinsicSurface`` values.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from . import geometry as geo
from .cone import Cone, ConePlacement, development_placement, nearest_on_chain
from .config import DEFAULT_TOL, Config
from .curve import SurfaceCurve, check_valid, corners, side_angles, side_name
from .develop import develop_curve, side_turn
from .errors import PreconditionError, SurgeryError
from .geodesic import GeodesicPath, shortest_path
from .local import direction_angle
from .mesh_edit import chain_sides, insert_chain, subdivide_edge, wedge
from .surface import IntrinsicSurface, SurfacePoint, ekey, validate_surface

TWO_PI = 2.0 * math.pi


@dataclass
class HalfSurface:
    """One side of a curve as a bordered surface.

    ``boundary`` lists the boundary vertices in loop order (surface on the
    left); ``waypoint_ids[i]`` is the boundary vertex of curve waypoint i.
    """
    surface: IntrinsicSurface
    boundary: List[int]
    waypoint_ids: List[int]
    side: str
    curve: Optional[SurfaceCurve] = None

    def interior_curvature(self, tol: float = DEFAULT_TOL) -> Dict[int, float]:
        s = self.surface
        out = {}
        for v in s.interior_vertices():
            w = s.curvature(v)
            if abs(w) > tol:
                out[v] = w
        return out

    def boundary_angles(self) -> Dict[int, float]:
        s = self.surface
        return {v: s.angle_sum(v) for v in dict.fromkeys(self.boundary)}

    def boundary_length(self) -> float:
        b = self.boundary
        return sum(self.surface.length(b[i], b[(i + 1) % len(b)]) for i in range(len(b)))

    def with_surface(self, s: IntrinsicSurface) -> "HalfSurface":
        return HalfSurface(s, self.boundary, self.waypoint_ids, self.side, self.curve)

    def to_json(self) -> dict:
        return {"side": self.side, "boundary": self.boundary, "waypoint_ids": self.waypoint_ids,
                "surface": self.surface.to_json()}


@dataclass
class MergeRecord:
    v1: int
    v2: int
    path: GeodesicPath
    base_angles: Tuple[float, float]
    new_vertex: int
    omega: float

    def to_json(self) -> dict:
        return {"v1": self.v1, "v2": self.v2, "path": self.path.to_json(),
                "base_angles": list(self.base_angles), "new_vertex": self.new_vertex, "omega": self.omega}


@dataclass
class Doubling:
    surface: IntrinsicSurface
    half: HalfSurface            # the input, with interior chords between boundary vertices split
    mirror: Dict[int, int]       # vertex of the half -> its copy (boundary vertices map to themselves)


@dataclass
class ConeConstruction:
    """Cone produced by a surgery, with the placement it implies and a step log."""
    cone: Cone
    placement: ConePlacement
    steps: List[dict] = field(default_factory=list)
    surface: Optional[IntrinsicSurface] = None
    apex_vertex: Optional[int] = None

    def to_json(self) -> dict:
        return {"cone": self.cone.to_json(), "steps": self.steps, "apex_vertex": self.apex_vertex}


# --------------------------------------------------------------------------
# split


def _cut_side(s: IntrinsicSurface, ids: Sequence[int], faces, side: str):
    """Copy the given faces, duplicating chain vertices that the side meets more than once."""
    n = len(ids)
    next_id = s.next_vertex_id()
    relabel: Dict[Tuple[int, int], int] = {}
    labels: List[int] = []
    seen = set()
    for i in range(n):
        v, nxt, prv = ids[i], ids[(i + 1) % n], ids[i - 1]
        if side == "left":
            w = wedge(s, v, nxt, prv)
        elif nxt == prv:
            w = []  # the collapsed side of a fold
        else:
            w = wedge(s, v, prv, nxt)
        w = [f for f in w if f in faces]
        label = v
        if v in seen:
            label = next_id
            next_id += 1
        seen.add(v)
        for f in w:
            relabel[(f, v)] = label
        labels.append(label)
    tris, lengths = [], {}
    for f in sorted(faces):
        tri = s.triangles[f]
        new = tuple(relabel.get((f, x), x) for x in tri)
        tris.append(new)
        for k in range(3):
            lengths[ekey(new[k], new[(k + 1) % 3])] = s.length(tri[k], tri[(k + 1) % 3])
    verts = sorted({x for t in tris for x in t} | set(labels))
    return IntrinsicSurface(verts, tris, lengths), labels


def split(c: SurfaceCurve, tol: float = DEFAULT_TOL) -> Tuple[HalfSurface, HalfSurface]:
    """Cut the surface along c into its left and right half-surfaces."""
    check_valid(c, tol)
    ins = insert_chain(c.surface, c.waypoints, closed=True, subdivide=True)
    s = ins.surface
    left, right = chain_sides(s, ins.ids, True)
    where = {src: k for k, src in enumerate(ins.source) if src is not None}
    out = []
    for side, faces in (("left", left), ("right", right)):
        surf, labels = _cut_side(s, ins.ids, faces, side)
        wids = [labels[where[i]] for i in range(c.n)]
        boundary = labels if side == "left" else [labels[0]] + labels[:0:-1]
        out.append(HalfSurface(surf, boundary, wids, side, c))
    return out[0], out[1]


# --------------------------------------------------------------------------
# vertex merging


def _apex_triangle(L: float, w1: float, w2: float) -> geo.Point:
    """Apex of the triangle on base (0,0)-(L,0) with base angles w1/2, w2/2, below the base."""
    a1, a2 = w1 / 2.0, w2 / 2.0
    # law of sines: side from (0,0) to apex
    r1 = L * math.sin(a2) / math.sin(a1 + a2)
    return (r1 * math.cos(a1), -r1 * math.sin(a1))


def merge_vertices(s: IntrinsicSurface, v1: int, v2: int, path: Optional[GeodesicPath] = None,
                   config: Optional[Config] = None) -> Tuple[IntrinsicSurface, MergeRecord]:
    """Replace v1 and v2 by one vertex of curvature w1 + w2.

    The surface is cut along the shortest path from v1 to v2 and two copies
    of the triangle with base angles w1/2 and w2/2 are glued into the slit,
    one on each bank, their lateral sides glued to each other.
    """
    cfg = config or Config()
    tol = cfg.tolerance
    if v1 == v2:
        raise SurgeryError("cannot merge a vertex with itself")
    for v in (v1, v2):
        if v not in s.vertex_set:
            raise SurgeryError(f"unknown vertex {v}")
        if s.is_boundary_vertex(v):
            raise SurgeryError(f"vertex {v} lies on the boundary")
    w1, w2 = s.curvature(v1), s.curvature(v2)
    if w1 <= tol or w2 <= tol:
        raise SurgeryError(f"merged vertices need positive curvature, got {w1}, {w2}")
    if w1 + w2 >= TWO_PI - tol:
        raise SurgeryError(f"curvatures sum to {w1 + w2}, merging needs less than 2*pi")
    if path is None:
        path = shortest_path(s, SurfacePoint.at_vertex(v1), SurfacePoint.at_vertex(v2), cfg)
    pts = list(path.points)
    if pts[0].key() != SurfacePoint.at_vertex(v1).key() or pts[-1].key() != SurfacePoint.at_vertex(v2).key():
        raise SurgeryError("path does not join the two vertices")
    for p in pts[1:-1]:
        if p.kind == "vertex" and (abs(s.curvature(p.vertex)) > tol or s.is_boundary_vertex(p.vertex)):
            raise SurgeryError(f"path passes through vertex {p.vertex}")
        if p.kind == "edge" and ekey(*p.edge) in {ekey(*e) for e in s.boundary_edges}:
            raise SurgeryError(f"path runs along the boundary at {p}")

    ins = insert_chain(s, pts, closed=False, subdivide=True)
    t = ins.surface
    ids = ins.ids
    k = len(ids) - 1
    arc = [0.0]
    for i in range(k):
        arc.append(arc[-1] + t.length(ids[i], ids[i + 1]))
    L = arc[-1]

    next_id = t.next_vertex_id()
    bank_b = {}
    relabel: Dict[Tuple[int, int], int] = {}
    for i in range(1, k):
        v = ids[i]
        left = set(wedge(t, v, ids[i + 1], ids[i - 1]))
        bank_b[i] = next_id
        for f, _ in t.star(v)[0]:
            if f not in left:
                relabel[(f, v)] = next_id
        next_id += 1
    apex_id = next_id

    tris, lengths = [], {}
    for f, tri in enumerate(t.triangles):
        new = tuple(relabel.get((f, x), x) for x in tri)
        tris.append(new)
        for j in range(3):
            lengths[ekey(new[j], new[(j + 1) % 3])] = t.length(tri[j], tri[(j + 1) % 3])

    apex = _apex_triangle(L, w1, w2)
    a_ids = list(ids)
    b_ids = [ids[0]] + [bank_b[i] for i in range(1, k)] + [ids[k]]
    for i in range(k + 1):
        r = geo.dist((arc[i], 0.0), apex)
        lengths[ekey(a_ids[i], apex_id)] = r
        lengths[ekey(b_ids[i], apex_id)] = r
    for i in range(k):
        lengths[ekey(b_ids[i], b_ids[i + 1])] = arc[i + 1] - arc[i]
        # the left bank faces the triangle to its right, the other bank mirrors it
        tris.append((a_ids[i + 1], a_ids[i], apex_id))
        tris.append((b_ids[i], b_ids[i + 1], apex_id))
    verts = sorted({x for tri in tris for x in tri} | set(s.vertices))
    out = IntrinsicSurface(verts, tris, lengths)
    rec = MergeRecord(v1, v2, path, (w1 / 2.0, w2 / 2.0), apex_id, out.curvature(apex_id))
    return out, rec


# --------------------------------------------------------------------------
# doubling


def _as_half(p) -> HalfSurface:
    if isinstance(p, HalfSurface):
        return p
    loops = p.boundary_loops
    if len(loops) != 1:
        raise SurgeryError(f"expected one boundary loop, found {len(loops)}")
    return HalfSurface(p, list(loops[0]), list(loops[0]), "left")


def double_along_boundary(p, tol: float = DEFAULT_TOL) -> Doubling:
    """Glue a half-surface to its mirror image along the boundary.

    Each boundary point of angle L becomes a point of curvature 2*pi - 2L,
    so the boundary must have angle at most pi everywhere.
    """
    half = _as_half(p)
    s = half.surface
    loops = s.boundary_loops
    if len(loops) != 1:
        raise SurgeryError(f"expected one boundary loop, found {len(loops)}")
    bverts = s.boundary_vertices
    for v in sorted(bverts):
        ang = s.angle_sum(v)
        if ang > math.pi + tol:
            raise SurgeryError(f"boundary angle {ang} > pi at vertex {v}; gluing would exceed 2*pi")
    # interior edges joining two boundary vertices would be glued to their mirror twice
    bedges = {ekey(*e) for e in s.boundary_edges}
    while True:
        chord = next((e for e in sorted(s.edge_faces) if e not in bedges and e[0] in bverts and e[1] in bverts),
                     None)
        if chord is None:
            break
        s, _ = subdivide_edge(s, chord[0], chord[1], 0.5)
    nxt = s.next_vertex_id()
    mirror = {}
    for v in s.vertices:
        if v in bverts:
            mirror[v] = v
        else:
            mirror[v] = nxt
            nxt += 1
    tris = list(s.triangles)
    lengths = dict(s.lengths)
    for a, b, c in s.triangles:
        tris.append((mirror[c], mirror[b], mirror[a]))
    for (u, v), L in s.lengths.items():
        lengths[ekey(mirror[u], mirror[v])] = L
    verts = sorted(set(mirror.values()) | set(s.vertices))
    return Doubling(IntrinsicSurface(verts, tris, lengths), half.with_surface(s), mirror)


# --------------------------------------------------------------------------
# iterated merging


def _in_copy(half: HalfSurface, p: SurfacePoint) -> bool:
    """True when p lies in the original copy of a doubling and off its boundary."""
    s = half.surface
    vs = s.vertex_set
    bv = s.boundary_vertices
    if p.kind == "vertex":
        return p.vertex in vs and p.vertex not in bv
    if p.kind == "edge":
        e = ekey(*p.edge)
        return e in s.edge_faces and len(s.edge_faces[e]) == 2
    return all(x in vs for x in p.tri) and tuple(p.tri) and _has_face(s, p.tri)


def _has_face(s: IntrinsicSurface, tri) -> bool:
    try:
        s.face_index(tri)
        return True
    except Exception:
        return False


def _default_pair(curved: Dict[int, float]) -> Tuple[int, int]:
    ranked = sorted(curved, key=lambda v: (-curved[v], v))
    return ranked[0], ranked[1]


def merge_to_cone(half: HalfSurface, order: Optional[Sequence[int]] = None,
                  config: Optional[Config] = None) -> ConeConstruction:
    """Merge the interior vertices of a half-surface with convex boundary into a single cone apex.

    Merge paths are shortest paths on the doubled half-surface, which keep
    clear of the boundary. With no ``order`` the two largest curvatures are
    merged first; an explicit order merges its first two vertices and then
    the result with each following vertex. When the last two vertices carry
    2*pi together the half-surface lies on a cylinder and the final merge is
    skipped.
    """
    cfg = config or Config()
    tol = cfg.tolerance
    p = half
    curved = p.interior_curvature(tol)
    omega = sum(curved.values())
    if omega > TWO_PI + tol:
        raise SurgeryError(f"interior curvature {omega} exceeds 2*pi; the boundary is not convex to this side")
    double_along_boundary(p, tol)  # boundary angle check
    steps: List[dict] = []
    if not curved:
        return ConeConstruction(Cone.planar(), ConePlacement(Cone.planar()), steps, p.surface, None)
    queue = list(order) if order is not None else None
    if queue is not None:
        if sorted(queue) != sorted(curved):
            raise SurgeryError(f"merge order {list(queue)} must list the curved vertices {sorted(curved)}")
    current = None
    while len(curved) > 1:
        if queue is not None:
            if current is None:
                a, b = queue[0], queue[1]
                queue = queue[2:]
            else:
                a, b = current, queue[0]
                queue = queue[1:]
        else:
            a, b = _default_pair(curved)
        dbl = double_along_boundary(p, tol)
        p = dbl.half
        path = shortest_path(dbl.surface, SurfacePoint.at_vertex(a), SurfacePoint.at_vertex(b), cfg)
        bad = [q for q in path.points[1:-1] if not _in_copy(p, q)]
        if bad:
            raise SurgeryError(f"merge path from {a} to {b} leaves the half-surface at {bad[0]}")
        wa, wb = curved[a], curved[b]
        if len(curved) == 2 and abs(wa + wb - TWO_PI) <= 1e-7:
            circ = 2.0 * path.length * math.sin(wa / 2.0)
            steps.append({"merge": [a, b], "path_length": path.length, "omega": [wa, wb],
                          "result": "cylinder", "circumference": circ})
            cone = Cone.cylinder(circ)
            return ConeConstruction(cone, ConePlacement(cone), steps, p.surface, None)
        s2, rec = merge_vertices(p.surface, a, b, path, cfg)
        steps.append({"merge": [a, b], "path_length": path.length, "omega": [wa, wb],
                      "new_vertex": rec.new_vertex, "new_omega": rec.omega})
        p = p.with_surface(s2)
        current = rec.new_vertex
        curved = p.interior_curvature(tol)
    (apex, w), = curved.items()
    cone = Cone.proper(TWO_PI - w)
    placement = _apex_placement(p, apex, cone, cfg)
    return ConeConstruction(cone, placement, steps, p.surface, apex)


def _apex_placement(p: HalfSurface, apex: int, cone: Cone, cfg: Config) -> ConePlacement:
    """Apex distances and polar increments of the waypoints, measured on the surface."""
    dbl = double_along_boundary(p, cfg.tolerance)
    D = dbl.surface
    a = SurfacePoint.at_vertex(apex)
    radii, angles = [], []
    for v in p.waypoint_ids:
        path = shortest_path(D, a, SurfacePoint.at_vertex(v), cfg)
        radii.append(path.length)
        angles.append(direction_angle(D, a, path.points[1]))
    theta = cone.apex_angle
    sgn = 1.0 if p.side == "left" else -1.0
    n = len(angles)
    incs = [(sgn * (angles[(i + 1) % n] - angles[i])) % theta for i in range(n)]
    return ConePlacement(cone, radii=radii, increments=incs)


# --------------------------------------------------------------------------
# reflex-side construction


def _line_meet(p: geo.Point, u: geo.Point, q: geo.Point, v: geo.Point) -> Optional[geo.Point]:
    den = geo.cross(u, v)
    scale = math.hypot(*u) * math.hypot(*v)
    if abs(den) <= 1e-12 * scale:
        return None
    s = geo.cross(geo.sub(q, p), v) / den
    return geo.add(p, geo.scale(u, s))


def reflex_cone_construction(c: SurfaceCurve, tol: float = DEFAULT_TOL) -> ConeConstruction:
    """Build the right-side cone of a curve convex to its left by corner-wise curvature insertion.

    Start on the left cone. At every corner ci with vertex curvature wi,
    cut the development at ci and rotate the two apex lines through the
    cut images by +wi/2 and -wi/2; their meet is the new apex (parallel
    lines put it at infinity). The corner's turn then switches from the
    left-side value to the right-side one. The corner with right angle
    below pi, if any, goes last.
    """
    check_valid(c, tol)
    n = c.n
    cds = corners(c, tol)
    bad_left = [cd.index for cd in cds if cd.alpha > math.pi + tol]
    if bad_left:
        raise PreconditionError(f"left angle above pi at corners {bad_left}")
    exceptional = [cd.index for cd in cds if cd.beta < math.pi - tol]
    if len(exceptional) > 1:
        raise PreconditionError(f"right angle below pi at {len(exceptional)} corners {exceptional}")
    todo = sorted((cd for cd in cds if cd.omega > tol), key=lambda cd: (cd.index in exceptional, cd.index))
    turns = [side_turn(c, i, "left") for i in range(n)]
    lengths = c.arc_lengths()

    d = develop_curve(c, todo[0].index if todo else 0, "left", tol, turns=turns, lengths=lengths)
    T = d.total_turn
    if todo and abs(abs(T) - TWO_PI) < 1e-7:
        raise PreconditionError("the left cone is the plane; there is no apex to move")
    apex, normal = None, None
    if abs(T) >= 1e-7:
        apex = geo.rotation_center(d.x1, d.x2, T)
    else:
        normal = geo.rotate(geo.sub(d.x2, d.x1), math.pi / 2)
    steps: List[dict] = []
    for cd in todo:
        i, w = cd.index, cd.omega
        prev = d
        d = develop_curve(c, i, "left", tol, turns=turns, lengths=lengths)
        # carry the apex over along the arc leaving ci, which both developments contain
        pw = prev.waypoint_points()
        j = (i + 1) % n
        m = geo.Rigid.from_segments(pw[i], prev.x2 if j == prev.cut[0] else pw[j], d.points[0], d.points[1])
        if apex is not None:
            apex = m(apex)
            u1, u2 = geo.sub(apex, d.x1), geo.sub(apex, d.x2)
        else:
            normal = geo.rotate(normal, m.angle)
            u1 = u2 = normal
        turns[i] = side_turn(c, i, "right")
        T = sum(turns)
        r1, r2 = geo.rotate(u1, w / 2.0), geo.rotate(u2, -w / 2.0)
        if abs(T) < 1e-7:
            apex, normal = None, r1
            miss = abs(geo.cross(r1, r2)) / (math.hypot(*r1) * math.hypot(*r2))
        else:
            # the apex stays on the bisector of x1 x2 (the two lines coincide when T = pi)
            mid = geo.lerp(d.x1, d.x2, 0.5)
            apex = _line_meet(d.x1, r1, mid, geo.rotate(geo.sub(d.x2, d.x1), math.pi / 2))
            if apex is None:
                raise SurgeryError(f"rotated generator at corner {i} misses the bisector")
            miss = abs(geo.cross(geo.sub(apex, d.x2), r2)) / math.hypot(*r2)
        if miss > 1e-7 * max(1.0, geo.dist(d.x1, d.x2)):
            raise SurgeryError(f"rotated generators at corner {i} disagree by {miss}")
        # the cut turn is never drawn, so d's points are unchanged by the new turn
        d = develop_curve(c, i, "left", tol, turns=turns, lengths=lengths)
        convex = all(t >= -tol for k, t in enumerate(turns) if k not in exceptional)
        steps.append({
            "corner": i,
            "omega": w,
            "total_turn": T,
            "apex": list(apex) if apex is not None else None,
            "apex_distance": nearest_on_chain(apex, d.points)[2] if apex is not None else None,
            "convex": convex,
        })
        if not convex:
            raise SurgeryError(f"intermediate curve not convex after corner {i}")

    if abs(T) < 1e-7:
        circ = geo.dist(d.x1, d.x2)
        cone = Cone.cylinder(circ)
        g = geo.rotate(geo.scale(geo.sub(d.x2, d.x1), 1.0 / circ), -math.pi / 2)
        placement = development_placement(d, n, cone, T, generator=g)
    elif abs(abs(T) - TWO_PI) < 1e-7:
        cone = Cone.planar()
        placement = development_placement(d, n, cone, T)
    else:
        cone = Cone.proper(abs(T))
        placement = development_placement(d, n, cone, T, apex=apex)
    return ConeConstruction(cone, placement, steps)


# --------------------------------------------------------------------------
# polygon gluing


def glue_polygon(half: HalfSurface, polygon: Sequence[geo.Point], tol: float = DEFAULT_TOL) -> IntrinsicSurface:
    """Close a half-surface by gluing a planar convex polygon onto its boundary.

    ``polygon[k]`` is glued to waypoint k of the half-surface's curve.
    Boundary vertices between waypoints land on the polygon edge at the
    matching arc length. Either planar orientation of the polygon is
    accepted. At most 2*pi may be glued at any point.
    """
    Q = [(float(q[0]), float(q[1])) for q in polygon]
    m = len(Q)
    wp = list(half.waypoint_ids)
    if m != len(wp):
        raise SurgeryError(f"polygon has {m} vertices but the curve has {len(wp)} waypoints")
    if m < 3:
        raise SurgeryError("polygon needs at least three vertices")
    turns = [geo.orient(Q[k - 1], Q[k], Q[(k + 1) % m]) for k in range(m)]
    scale = max(geo.dist(Q[k], Q[(k + 1) % m]) for k in range(m)) ** 2
    if min(turns) < -tol * scale and max(turns) > tol * scale:
        raise SurgeryError("polygon is not convex")

    s = half.surface
    b = half.boundary
    if half.side == "right":
        b = [b[0]] + b[:0:-1]
    start = b.index(wp[0])
    order = b[start:] + b[:start]  # boundary vertices in curve order
    nb = len(order)
    at = {v: k for k, v in enumerate(order)}
    placed: Dict[int, geo.Point] = {}
    for k in range(m):
        i0, i1 = at[wp[k]], at[wp[(k + 1) % m]]
        run = [(i0 + j) % nb for j in range(((i1 - i0) % nb) or nb)]
        seg = [s.length(order[j], order[(j + 1) % nb]) for j in run]
        arc = sum(seg)
        edge = geo.dist(Q[k], Q[(k + 1) % m])
        if abs(arc - edge) > 1e-7 * max(1.0, arc):
            raise SurgeryError(f"polygon edge {k} has length {edge} but the curve arc has length {arc}")
        acc = 0.0
        for j, L in zip(run, seg):
            placed[order[j]] = geo.lerp(Q[k], Q[(k + 1) % m], acc / arc)
            acc += L
    centre = (sum(q[0] for q in Q) / m, sum(q[1] for q in Q) / m)
    # the polygon sits across every boundary edge, so (v, u, centre) must be counterclockwise
    bedges = s.boundary_edges
    if sum(geo.orient(placed[v], placed[u], centre) for u, v in bedges) < 0:
        placed = {v: (p[0], -p[1]) for v, p in placed.items()}
        centre = (centre[0], -centre[1])
    cid = s.next_vertex_id()
    tris = list(s.triangles)
    lengths = dict(s.lengths)
    for u, v in bedges:
        if geo.orient(placed[v], placed[u], centre) <= 0:
            raise SurgeryError(f"boundary edge ({u}, {v}) does not face the polygon interior")
        tris.append((v, u, cid))
        lengths[ekey(u, cid)] = geo.dist(placed[u], centre)
        lengths[ekey(v, cid)] = geo.dist(placed[v], centre)
    out = IntrinsicSurface(sorted(set(s.vertices) | {cid}), tris, lengths)
    for v in sorted(s.boundary_vertices):
        if out.angle_sum(v) > TWO_PI + 1e-7:
            raise SurgeryError(f"{out.angle_sum(v)} > 2*pi glued at boundary vertex {v}")
    rep = validate_surface(out, 1e-7)
    if not rep.ok:
        raise SurgeryError(f"glued surface is invalid: {rep.violations}")
    return out

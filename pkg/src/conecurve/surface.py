"""Intrinsic triangulated surfaces: combinatorics plus edge lengths.

No coordinates are stored. Face angles are always recomputed from the
lengths, and every face can be laid out in the plane on demand with its
vertices in counterclockwise order.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from . import geometry as geo
from .config import DEFAULT_TOL
from .errors import SurfaceError

TWO_PI = 2.0 * math.pi


def ekey(i: int, j: int) -> Tuple[int, int]:
    return (i, j) if i < j else (j, i)


def _rotate_to_min(tri, bary=None):
    k = tri.index(min(tri))
    tri = tuple(tri[k:]) + tuple(tri[:k])
    if bary is not None:
        bary = tuple(bary[k:]) + tuple(bary[:k])
    return tri, bary


@dataclass(frozen=True)
class SurfacePoint:
    """A point of a surface: a vertex, an interior edge point or a face point.

    Edge points store the unordered edge ``(i, j)`` with i < j and the
    parameter t of ``(1 - t) * i + t * j``. Face points store the oriented
    triangle rotated so its smallest id comes first, with matching
    barycentric coordinates.
    """

    kind: str
    vertex: Optional[int] = None
    edge: Optional[Tuple[int, int]] = None
    t: float = 0.0
    tri: Optional[Tuple[int, int, int]] = None
    bary: Optional[Tuple[float, float, float]] = None

    @classmethod
    def at_vertex(cls, v: int) -> "SurfacePoint":
        return cls("vertex", vertex=v)

    @classmethod
    def on_edge(cls, i: int, j: int, t: float) -> "SurfacePoint":
        if not 0.0 < t < 1.0:
            raise SurfaceError(f"edge parameter {t} outside (0, 1)")
        if i > j:
            i, j, t = j, i, 1.0 - t
        return cls("edge", edge=(i, j), t=float(t))

    @classmethod
    def in_face(cls, tri: Sequence[int], bary: Sequence[float]) -> "SurfacePoint":
        b = [float(x) for x in bary]
        if min(b) <= 0.0 or abs(sum(b) - 1.0) > 1e-9:
            raise SurfaceError(f"barycentric coordinates {bary} not positive / normalised")
        tri, b = _rotate_to_min(tuple(tri), tuple(b))
        return cls("face", tri=tri, bary=b)

    def key(self, ndigits: int = 10):
        if self.kind == "vertex":
            return ("v", self.vertex)
        if self.kind == "edge":
            return ("e", self.edge, round(self.t, ndigits))
        return ("f", self.tri, tuple(round(x, ndigits) for x in self.bary))

    def to_json(self) -> dict:
        if self.kind == "vertex":
            return {"type": "vertex", "id": self.vertex}
        if self.kind == "edge":
            return {"type": "edge", "edge": list(self.edge), "t": self.t}
        return {"type": "face", "tri": list(self.tri), "bary": list(self.bary)}

    @classmethod
    def from_json(cls, d: dict) -> "SurfacePoint":
        kind = d.get("type")
        if kind == "vertex":
            return cls.at_vertex(int(d["id"]))
        if kind == "edge":
            i, j = d["edge"]
            return cls.on_edge(int(i), int(j), float(d["t"]))
        if kind == "face":
            return cls.in_face([int(x) for x in d["tri"]], d["bary"])
        raise SurfaceError(f"unknown waypoint type {kind!r}")

    def __repr__(self):
        if self.kind == "vertex":
            return f"V({self.vertex})"
        if self.kind == "edge":
            return f"E({self.edge[0]},{self.edge[1]};{self.t:.4g})"
        return f"F({self.tri};{', '.join(f'{x:.3g}' for x in self.bary)})"


@dataclass
class ValidationReport:
    violations: List[str] = field(default_factory=list)
    total_curvature: float = float("nan")
    closed: bool = False
    convex: bool = False
    euler_characteristic: int = 0
    boundary_loops: int = 0

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "violations": list(self.violations),
            "total_curvature": self.total_curvature,
            "closed": self.closed,
            "convex": self.convex,
            "euler_characteristic": self.euler_characteristic,
            "boundary_loops": self.boundary_loops,
        }


class IntrinsicSurface:
    """Triangulated metric surface given by oriented triangles and edge lengths.

    Instances are treated as immutable; derived tables are cached on first
    use. Triangles are counterclockwise as seen from outside (for a
    bordered surface: the surface lies left of each boundary edge).
    """

    def __init__(self, vertices: Iterable[int], triangles: Iterable[Sequence[int]],
                 edge_lengths: Dict[Tuple[int, int], float]):
        self.vertices: Tuple[int, ...] = tuple(int(v) for v in vertices)
        self.triangles: Tuple[Tuple[int, int, int], ...] = tuple(tuple(int(x) for x in t) for t in triangles)
        self.lengths: Dict[Tuple[int, int], float] = {ekey(*k): float(v) for k, v in edge_lengths.items()}

    # ------------------------------------------------------------------ tables
    @cached_property
    def vertex_set(self):
        return frozenset(self.vertices)

    @cached_property
    def halfedges(self) -> Dict[Tuple[int, int], Tuple[int, int]]:
        """(u, v) -> (face index, local index of u)."""
        out = {}
        for f, tri in enumerate(self.triangles):
            for k in range(3):
                he = (tri[k], tri[(k + 1) % 3])
                if he in out:
                    out[he] = (-1, -1)  # marks non-manifold duplicates
                else:
                    out[he] = (f, k)
        return out

    @cached_property
    def face_lookup(self) -> Dict[Tuple[int, int, int], int]:
        return {_rotate_to_min(tri)[0]: f for f, tri in enumerate(self.triangles)}

    @cached_property
    def edge_faces(self) -> Dict[Tuple[int, int], List[int]]:
        out: Dict[Tuple[int, int], List[int]] = {}
        for f, tri in enumerate(self.triangles):
            for k in range(3):
                out.setdefault(ekey(tri[k], tri[(k + 1) % 3]), []).append(f)
        return out

    @cached_property
    def vertex_faces(self) -> Dict[int, List[int]]:
        out: Dict[int, List[int]] = {v: [] for v in self.vertices}
        for f, tri in enumerate(self.triangles):
            for v in tri:
                out.setdefault(v, []).append(f)
        return out

    @cached_property
    def boundary_edges(self) -> List[Tuple[int, int]]:
        """Directed boundary edges (u, v) with the surface on their left."""
        return [he for he in self.halfedges if (he[1], he[0]) not in self.halfedges]

    @cached_property
    def boundary_vertices(self) -> frozenset:
        return frozenset(u for u, _ in self.boundary_edges)

    @cached_property
    def boundary_loops(self) -> List[List[int]]:
        nxt = {}
        for u, v in self.boundary_edges:
            nxt.setdefault(u, []).append(v)
        loops = []
        seen = set()
        for u, v in sorted(self.boundary_edges):
            if (u, v) in seen:
                continue
            loop = [u]
            seen.add((u, v))
            cur = v
            guard = 0
            while cur != u and guard <= len(self.boundary_edges):
                loop.append(cur)
                succ = [w for w in nxt.get(cur, []) if (cur, w) not in seen]
                if not succ:
                    break
                seen.add((cur, succ[0]))
                cur = succ[0]
                guard += 1
            loops.append(loop)
        return loops

    @property
    def closed(self) -> bool:
        return not self.boundary_edges

    def length(self, u: int, v: int) -> float:
        try:
            return self.lengths[ekey(u, v)]
        except KeyError:
            raise SurfaceError(f"no edge ({u}, {v})") from None

    def face_index(self, tri: Sequence[int]) -> int:
        try:
            return self.face_lookup[_rotate_to_min(tuple(tri))[0]]
        except KeyError:
            raise SurfaceError(f"no face {tuple(tri)}") from None

    def face_lengths(self, f: int) -> Tuple[float, float, float]:
        a, b, c = self.triangles[f]
        return self.length(a, b), self.length(b, c), self.length(c, a)

    @cached_property
    def _angles(self) -> List[Tuple[float, float, float]]:
        out = []
        for f in range(len(self.triangles)):
            lab, lbc, lca = self.face_lengths(f)
            out.append((geo.opposite_angle(lbc, lab, lca),
                        geo.opposite_angle(lca, lab, lbc),
                        geo.opposite_angle(lab, lbc, lca)))
        return out

    def corner_angle(self, f: int, k: int) -> float:
        return self._angles[f][k]

    def face_area(self, f: int) -> float:
        return geo.triangle_area(*self.face_lengths(f))

    def area(self) -> float:
        return sum(self.face_area(f) for f in range(len(self.triangles)))

    @cached_property
    def _layouts(self):
        out = []
        for f in range(len(self.triangles)):
            lab, lbc, lca = self.face_lengths(f)
            p0 = (0.0, 0.0)
            p1 = (lab, 0.0)
            p2 = geo.third_point(p0, p1, lca, lbc, left=True)
            out.append((p0, p1, p2))
        return out

    def layout(self, f: int) -> Tuple[geo.Point, geo.Point, geo.Point]:
        """Canonical ccw planar placement of face f (first vertex at origin)."""
        return self._layouts[f]

    # ---------------------------------------------------------------- vertices
    def star(self, v: int) -> Tuple[List[Tuple[int, int]], bool]:
        """Faces around v in counterclockwise order as (face, local index).

        Returns the list and whether it closes up (interior vertex).
        """
        return self._stars[v]

    @cached_property
    def _stars(self):
        out = {}
        for v in self.vertices:
            corners = []
            for f in self.vertex_faces.get(v, []):
                corners.append((f, self.triangles[f].index(v)))
            if not corners:
                out[v] = ([], False)
                continue
            by_first = {}
            for f, k in corners:
                tri = self.triangles[f]
                by_first[tri[(k + 1) % 3]] = (f, k)
            # a boundary fan starts at the face whose first edge has no twin
            start = corners[0]
            closed = True
            for f, k in corners:
                a = self.triangles[f][(k + 1) % 3]
                if (a, v) not in self.halfedges:
                    start = (f, k)
                    closed = False
                    break
            order = [start]
            seen = {start[0]}
            f, k = start
            while True:
                b = self.triangles[f][(k + 2) % 3]
                nxt = by_first.get(b)
                if nxt is None or nxt[0] in seen:
                    break
                order.append(nxt)
                seen.add(nxt[0])
                f, k = nxt
            out[v] = (order, closed and len(order) == len(corners))
        return out

    def angle_sum(self, v: int) -> float:
        if v not in self.vertex_set:
            raise SurfaceError(f"unknown vertex {v}")
        return sum(self.corner_angle(f, k) for f, k in self.star(v)[0])

    def is_boundary_vertex(self, v: int) -> bool:
        return v in self.boundary_vertices

    def curvature(self, v: int) -> float:
        """2*pi minus the angle sum; for boundary vertices pi minus it."""
        s = self.angle_sum(v)
        return (math.pi if self.is_boundary_vertex(v) else TWO_PI) - s

    def curvatures(self) -> Dict[int, float]:
        return {v: self.curvature(v) for v in self.vertices}

    def interior_vertices(self) -> List[int]:
        return [v for v in self.vertices if v not in self.boundary_vertices and self.vertex_faces.get(v)]

    def total_curvature(self) -> float:
        """Sum of interior curvatures plus boundary turning (Gauss-Bonnet: 2*pi*chi)."""
        return sum(self.curvature(v) for v in self.vertices if self.vertex_faces.get(v))

    def next_vertex_id(self) -> int:
        return max(self.vertices) + 1 if self.vertices else 0

    # ------------------------------------------------------------------ points
    def point_faces(self, p: SurfacePoint) -> List[int]:
        if p.kind == "vertex":
            if p.vertex not in self.vertex_set:
                raise SurfaceError(f"unknown vertex {p.vertex}")
            return list(self.vertex_faces.get(p.vertex, []))
        if p.kind == "edge":
            faces = self.edge_faces.get(p.edge)
            if not faces:
                raise SurfaceError(f"no edge {p.edge}")
            return list(faces)
        return [self.face_index(p.tri)]

    def point_in_face(self, p: SurfacePoint, f: int) -> bool:
        tri = self.triangles[f]
        if p.kind == "vertex":
            return p.vertex in tri
        if p.kind == "edge":
            return p.edge[0] in tri and p.edge[1] in tri and any(
                ekey(tri[k], tri[(k + 1) % 3]) == p.edge for k in range(3))
        return _rotate_to_min(tri)[0] == p.tri

    def coords_in_face(self, p: SurfacePoint, f: int, layout=None) -> geo.Point:
        """Planar coordinates of p in a placement of face f (canonical by default)."""
        tri = self.triangles[f]
        P = layout if layout is not None else self.layout(f)
        if p.kind == "vertex":
            return P[tri.index(p.vertex)]
        if p.kind == "edge":
            i, j = p.edge
            return geo.lerp(P[tri.index(i)], P[tri.index(j)], p.t)
        rot, _ = _rotate_to_min(tri)
        if rot != p.tri:
            raise SurfaceError(f"{p} not in face {tri}")
        x = y = 0.0
        for vid, w in zip(p.tri, p.bary):
            q = P[tri.index(vid)]
            x += w * q[0]
            y += w * q[1]
        return (x, y)

    def point_from_coords(self, f: int, xy: geo.Point, layout=None, snap: float = 1e-12) -> SurfacePoint:
        """Inverse of coords_in_face: classify a planar point of face f."""
        tri = self.triangles[f]
        P = layout if layout is not None else self.layout(f)
        area = geo.orient(P[0], P[1], P[2])
        b = [geo.orient(P[1], P[2], xy) / area,
             geo.orient(P[2], P[0], xy) / area,
             geo.orient(P[0], P[1], xy) / area]
        scale = max(self.face_lengths(f))
        eps = snap * max(1.0, scale)
        small = [abs(x) <= eps or x < 0 for x in b]
        if sum(small) >= 2:
            k = max(range(3), key=lambda i: b[i])
            return SurfacePoint.at_vertex(tri[k])
        if sum(small) == 1:
            k = small.index(True)
            i, j = tri[(k + 1) % 3], tri[(k + 2) % 3]
            bi, bj = max(b[(k + 1) % 3], 0.0), max(b[(k + 2) % 3], 0.0)
            t = bj / (bi + bj)
            return SurfacePoint.on_edge(i, j, t)
        s = sum(b)
        return SurfacePoint.in_face(tri, [x / s for x in b])

    def common_faces(self, p: SurfacePoint, q: SurfacePoint) -> List[int]:
        fq = set(self.point_faces(q))
        return [f for f in self.point_faces(p) if f in fq]

    def distance_in_face(self, p: SurfacePoint, q: SurfacePoint, f: Optional[int] = None) -> float:
        if f is None:
            faces = self.common_faces(p, q)
            if not faces:
                raise SurfaceError(f"{p} and {q} share no face")
            f = faces[0]
        return geo.dist(self.coords_in_face(p, f), self.coords_in_face(q, f))

    # -------------------------------------------------------------------- I/O
    def to_json(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "triangles": [list(t) for t in self.triangles],
            "edge_lengths": [[i, j, L] for (i, j), L in sorted(self.lengths.items())],
            "orientation": "ccw",
        }

    @classmethod
    def from_json(cls, d: dict, tol: float = DEFAULT_TOL) -> "IntrinsicSurface":
        if d.get("orientation", "ccw") != "ccw":
            raise SurfaceError("only ccw orientation is supported")
        lengths: Dict[Tuple[int, int], float] = {}
        for i, j, L in d["edge_lengths"]:
            k = ekey(int(i), int(j))
            if k in lengths and abs(lengths[k] - float(L)) > tol:
                raise SurfaceError(f"duplicate edge {k} with lengths {lengths[k]} and {L}")
            lengths[k] = float(L)
        s = cls(d["vertices"], d["triangles"], lengths)
        rep = validate_surface(s, tol)
        bad = [v for v in rep.violations if v.startswith(("non-manifold", "unknown", "missing"))]
        if bad:
            raise SurfaceError("; ".join(bad))
        return s

    @classmethod
    def load(cls, path, tol: float = DEFAULT_TOL) -> "IntrinsicSurface":
        with open(path) as fh:
            return cls.from_json(json.load(fh), tol)

    def __repr__(self):
        return f"IntrinsicSurface(V={len(self.vertices)}, F={len(self.triangles)})"


def from_positions(positions, triangles, vertex_ids=None) -> IntrinsicSurface:
    """Intrinsic surface of an embedded triangle mesh (lengths measured, coordinates dropped)."""
    pos = np.asarray(positions, dtype=float)
    ids = list(range(len(pos))) if vertex_ids is None else list(vertex_ids)
    index = {v: i for i, v in enumerate(ids)}
    lengths = {}
    for tri in triangles:
        for k in range(3):
            a, b = tri[k], tri[(k + 1) % 3]
            lengths[ekey(a, b)] = float(np.linalg.norm(pos[index[a]] - pos[index[b]]))
    return IntrinsicSurface(ids, triangles, lengths)


def validate_surface(s: IntrinsicSurface, tol: float = DEFAULT_TOL) -> ValidationReport:
    rep = ValidationReport()
    vs = s.vertex_set
    ok_faces = True
    for f, tri in enumerate(s.triangles):
        if len(set(tri)) != 3:
            rep.violations.append(f"degenerate triangle {tri}")
            ok_faces = False
            continue
        for v in tri:
            if v not in vs:
                rep.violations.append(f"unknown vertex {v} in triangle {tri}")
                ok_faces = False
        ls = []
        for k in range(3):
            key = ekey(tri[k], tri[(k + 1) % 3])
            if key not in s.lengths:
                rep.violations.append(f"missing length for edge {key}")
                ok_faces = False
            else:
                ls.append(s.lengths[key])
        if len(ls) == 3 and not geo.triangle_inequality_ok(*ls, tol=0.0):
            rep.violations.append(f"triangle inequality violated in {tri}: lengths {ls}")
            ok_faces = False
    for he, (f, _) in s.halfedges.items():
        if f < 0:
            rep.violations.append(f"non-manifold: half-edge {he} used twice (inconsistent orientation)")
    for e, faces in s.edge_faces.items():
        if len(faces) > 2:
            rep.violations.append(f"non-manifold: edge {e} shared by {len(faces)} triangles")
    for k, L in s.lengths.items():
        if not L > 0:
            rep.violations.append(f"non-positive length {L} on edge {k}")
    if rep.violations or not ok_faces:
        return rep
    for v in s.vertices:
        corners = s.vertex_faces.get(v, [])
        if not corners:
            rep.violations.append(f"isolated vertex {v}")
            continue
        order, _ = s.star(v)
        if len(order) != len(corners):
            rep.violations.append(f"non-manifold vertex {v}: star is not a single fan")
    # connectivity
    if s.triangles:
        adj = {f: set() for f in range(len(s.triangles))}
        for faces in s.edge_faces.values():
            for a in faces:
                for b in faces:
                    if a != b:
                        adj[a].add(b)
        seen = {0}
        stack = [0]
        while stack:
            f = stack.pop()
            for g in adj[f]:
                if g not in seen:
                    seen.add(g)
                    stack.append(g)
        if len(seen) != len(s.triangles):
            rep.violations.append("surface is not connected")
    if rep.violations:
        return rep
    V = sum(1 for v in s.vertices if s.vertex_faces.get(v))
    E = len(s.edge_faces)
    F = len(s.triangles)
    rep.euler_characteristic = V - E + F
    rep.closed = s.closed
    rep.boundary_loops = len(s.boundary_loops)
    rep.total_curvature = s.total_curvature()
    expected_chi = 2 - rep.boundary_loops
    if rep.euler_characteristic != expected_chi:
        rep.violations.append(
            f"topology: V-E+F = {rep.euler_characteristic}, expected {expected_chi} (genus 0 only)")
    if abs(rep.total_curvature - TWO_PI * rep.euler_characteristic) > max(tol, 1e-9) * max(1, len(s.vertices)):
        rep.violations.append(
            f"total curvature {rep.total_curvature!r} differs from 2*pi*chi")
    negative = [v for v in s.interior_vertices() if s.curvature(v) < -tol]
    rep.convex = not negative and rep.closed and rep.euler_characteristic == 2
    if s.boundary_edges:
        rep.convex = not negative
    return rep


def vertex_curvature(s: IntrinsicSurface, v: int) -> float:
    return s.curvature(v)


def unfold_chain(s: IntrinsicSurface, faces: Sequence[int], seed=None,
                 via: Optional[Sequence[Tuple[int, int]]] = None) -> List[Dict[int, geo.Point]]:
    """Lay out a sequence of edge-adjacent faces isometrically in one plane.

    ``seed`` maps the first face's vertices to planar points (canonical
    layout by default). ``via`` optionally names the shared edge between
    consecutive faces, needed when two faces share more than one edge.
    Each face is placed so that its vertex order stays counterclockwise.
    """
    if not faces:
        return []
    f0 = faces[0]
    tri0 = s.triangles[f0]
    if seed is None:
        P = s.layout(f0)
        placed = [{tri0[k]: P[k] for k in range(3)}]
    else:
        placed = [{v: tuple(seed[v]) for v in tri0}]
    for idx in range(1, len(faces)):
        prev, cur = faces[idx - 1], faces[idx]
        tp, tc = s.triangles[prev], s.triangles[cur]
        if via is not None:
            u, w = via[idx - 1]
        else:
            shared = [v for v in tc if v in tp]
            cand = [(tc[k], tc[(k + 1) % 3]) for k in range(3)
                    if tc[k] in shared and tc[(k + 1) % 3] in shared
                    and (tc[(k + 1) % 3], tc[k]) in _directed(tp)]
            if not cand:
                raise SurfaceError(f"faces {prev} and {cur} are not adjacent")
            u, w = cand[0]
        if (w, u) not in _directed(tp) or (u, w) not in _directed(tc):
            raise SurfaceError(f"faces {prev} and {cur} are not adjacent across ({u}, {w})")
        k = tc.index(u)
        third = tc[(k + 2) % 3]
        pu, pw = placed[-1][u], placed[-1][w]
        # cur contains u->w ccw, so its third vertex is left of u->w
        pt = geo.third_point(pu, pw, s.length(u, third), s.length(w, third), left=True)
        placed.append({u: pu, w: pw, third: pt})
    return placed


def _directed(tri):
    return {(tri[k], tri[(k + 1) % 3]) for k in range(3)}


def relabel(s: IntrinsicSurface, mapping: Dict[int, int]) -> IntrinsicSurface:
    """Rename vertices; ids missing from ``mapping`` are kept."""
    tris = [tuple(mapping.get(v, v) for v in t) for t in s.triangles]
    lengths = {}
    for t in s.triangles:
        for k in range(3):
            a, b = t[k], t[(k + 1) % 3]
            lengths[ekey(mapping.get(a, a), mapping.get(b, b))] = s.length(a, b)
    return IntrinsicSurface(sorted({v for t in tris for v in t}), tris, lengths)

"""Retriangulation helpers: insert points and straight chains into a surface.

A chain of surface points (consecutive points sharing a face) is made part
of the mesh: every point becomes a vertex and every arc a union of edges.
Each original face is re-triangulated on its own in its planar layout by
point insertion followed by edge flips that recover the constraint
segments. Lengths are read off the planar layouts, so the metric is
untouched.
"""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Set, Tuple

from . import geometry as geo
from .errors import SurfaceError
from .surface import IntrinsicSurface, SurfacePoint, ekey


def arc_edge(s: IntrinsicSurface, p: SurfacePoint, q: SurfacePoint) -> Optional[Tuple[int, int]]:
    """The mesh edge containing both p and q, if the arc pq runs along one."""
    def edges_of(x):
        if x.kind == "edge":
            return {x.edge}
        if x.kind == "vertex":
            return {ekey(x.vertex, w) for w in _neighbours(s, x.vertex)}
        return set()
    common = edges_of(p) & edges_of(q)
    if p.kind == "vertex" and q.kind == "vertex":
        common = {ekey(p.vertex, q.vertex)} & common
    return next(iter(common)) if common else None


def _neighbours(s, v):
    out = set()
    for f in s.vertex_faces.get(v, []):
        out.update(s.triangles[f])
    out.discard(v)
    return out


def arc_face(s: IntrinsicSurface, p: SurfacePoint, q: SurfacePoint) -> int:
    faces = s.common_faces(p, q)
    if not faces:
        raise SurfaceError(f"consecutive points {p} and {q} share no face")
    return faces[0]


def midpoint(s: IntrinsicSurface, p: SurfacePoint, q: SurfacePoint) -> SurfacePoint:
    f = arc_face(s, p, q)
    a, b = s.coords_in_face(p, f), s.coords_in_face(q, f)
    return s.point_from_coords(f, geo.lerp(a, b, 0.5))


# --------------------------------------------------------------------------
# local constrained triangulation of a single face


class _Local:
    def __init__(self, pts: Dict[int, geo.Point], corners: Tuple[int, int, int]):
        self.pts = pts
        self.tris: List[Tuple[int, int, int]] = [corners]
        scale = max(geo.dist(pts[corners[i]], pts[corners[(i + 1) % 3]]) for i in range(3))
        self.eps = 1e-12 * scale * scale

    def _he(self):
        out = {}
        for idx, t in enumerate(self.tris):
            for k in range(3):
                out[(t[k], t[(k + 1) % 3])] = idx
        return out

    def insert(self, g: int):
        p = self.pts[g]
        best = None
        for idx, (a, b, c) in enumerate(self.tris):
            o = (geo.orient(self.pts[a], self.pts[b], p), geo.orient(self.pts[b], self.pts[c], p),
                 geo.orient(self.pts[c], self.pts[a], p))
            score = min(o)
            if best is None or score > best[0]:
                best = (score, idx, o)
        _, idx, o = best
        a, b, c = self.tris[idx]
        zero = [k for k in range(3) if abs(o[k]) <= self.eps * 10]
        if not zero:
            self.tris[idx] = (a, b, g)
            self.tris.append((b, c, g))
            self.tris.append((c, a, g))
            return
        k = zero[0]
        u, w = (a, b, c)[k], (a, b, c)[(k + 1) % 3]
        self._split_edge(u, w, g)

    def _split_edge(self, u, w, g):
        he = self._he()
        for (x, y) in ((u, w), (w, u)):
            idx = he.get((x, y))
            if idx is None:
                continue
            t = self.tris[idx]
            k = t.index(x)
            z = t[(k + 2) % 3]
            self.tris[idx] = (x, g, z)
            self.tris.append((g, y, z))

    def _crosses(self, e, a, b):
        P = self.pts
        u, v = e
        if len({u, v, a, b}) < 4:
            return False
        o1 = geo.orient(P[a], P[b], P[u])
        o2 = geo.orient(P[a], P[b], P[v])
        o3 = geo.orient(P[u], P[v], P[a])
        o4 = geo.orient(P[u], P[v], P[b])
        return ((o1 > self.eps and o2 < -self.eps) or (o1 < -self.eps and o2 > self.eps)) and \
               ((o3 > self.eps and o4 < -self.eps) or (o3 < -self.eps and o4 > self.eps))

    def recover(self, a: int, b: int):
        he = self._he()
        if (a, b) in he or (b, a) in he:
            return
        edges = {ekey(t[k], t[(k + 1) % 3]) for t in self.tris for k in range(3)}
        queue = deque(e for e in edges if self._crosses(e, a, b))
        if not queue:
            raise SurfaceError(f"cannot recover constraint ({a}, {b}): collinear obstruction")
        guard = 0
        while queue:
            guard += 1
            if guard > 10000:
                raise SurfaceError(f"constraint recovery did not converge for ({a}, {b})")
            u, v = queue.popleft()
            he = self._he()
            i1, i2 = he.get((u, v)), he.get((v, u))
            if i1 is None or i2 is None:
                continue
            t1, t2 = self.tris[i1], self.tris[i2]
            w1 = t1[(t1.index(u) + 2) % 3]  # left of u->v
            w2 = t2[(t2.index(v) + 2) % 3]  # left of v->u
            P = self.pts
            # quad u, w2, v, w1 must be strictly convex to flip
            if geo.orient(P[w1], P[w2], P[u]) * geo.orient(P[w1], P[w2], P[v]) >= 0 or \
               geo.orient(P[w2], P[w1], P[u]) == 0:
                queue.append((u, v))
                continue
            if not (geo.orient(P[u], P[w2], P[w1]) > self.eps and geo.orient(P[v], P[w1], P[w2]) > self.eps):
                queue.append((u, v))
                continue
            self.tris[i1] = (w1, u, w2)
            self.tris[i2] = (w2, v, w1)
            if self._crosses(ekey(w1, w2), a, b):
                queue.append(ekey(w1, w2))


@dataclass
class ChainInsertion:
    surface: IntrinsicSurface
    ids: List[int]              # vertex id of every chain point (midpoints included)
    source: List[Optional[int]]  # index into the input chain, None for inserted midpoints
    edges: List[Tuple[int, int]]  # directed chain edges between consecutive ids


def insert_points_and_chains(s: IntrinsicSurface, chains: Sequence[Tuple[Sequence[SurfacePoint], bool]],
                             subdivide: bool = True) -> Tuple[IntrinsicSurface, List[List[int]], List[List[Optional[int]]]]:
    """Insert several chains at once; returns the new surface, ids and source maps."""
    expanded: List[Tuple[List[SurfacePoint], List[Optional[int]], bool]] = []
    for pts, closed in chains:
        pts = list(pts)
        out, src = [], []
        n = len(pts)
        for i in range(n):
            out.append(pts[i])
            src.append(i)
            if i + 1 < n or closed:
                q = pts[(i + 1) % n]
                if subdivide:
                    out.append(midpoint(s, pts[i], q))
                    src.append(None)
        expanded.append((out, src, closed))

    next_id = s.next_vertex_id()
    by_key: Dict[tuple, int] = {}
    edge_pts: Dict[Tuple[int, int], List[Tuple[float, int]]] = {}
    face_pts: Dict[int, List[Tuple[int, SurfacePoint]]] = {}
    id_lists: List[List[int]] = []
    for out, _, _ in expanded:
        ids = []
        for p in out:
            if p.kind == "vertex":
                if p.vertex not in s.vertex_set:
                    raise SurfaceError(f"unknown vertex {p.vertex}")
                ids.append(p.vertex)
                continue
            k = p.key()
            if k not in by_key:
                by_key[k] = next_id
                if p.kind == "edge":
                    if p.edge not in s.edge_faces:
                        raise SurfaceError(f"no edge {p.edge}")
                    edge_pts.setdefault(p.edge, []).append((p.t, next_id))
                else:
                    face_pts.setdefault(s.face_index(p.tri), []).append((next_id, p))
                next_id += 1
            ids.append(by_key[k])
        id_lists.append(ids)

    # constraint segments per face
    cons: Dict[int, List[Tuple[int, int]]] = {}
    for (out, _, closed), ids in zip(expanded, id_lists):
        n = len(out)
        for i in range(n if closed else n - 1):
            p, q = out[i], out[(i + 1) % n]
            if ids[i] == ids[(i + 1) % n]:
                continue
            if arc_edge(s, p, q) is not None:
                continue
            cons.setdefault(arc_face(s, p, q), []).append((ids[i], ids[(i + 1) % n]))

    tris: List[Tuple[int, int, int]] = []
    lengths: Dict[Tuple[int, int], float] = {}
    for f, tri in enumerate(s.triangles):
        touched = f in cons or f in face_pts or any(ekey(tri[k], tri[(k + 1) % 3]) in edge_pts for k in range(3))
        if not touched:
            tris.append(tri)
            for k in range(3):
                lengths[ekey(tri[k], tri[(k + 1) % 3])] = s.length(tri[k], tri[(k + 1) % 3])
            continue
        P = s.layout(f)
        pts = {tri[k]: P[k] for k in range(3)}
        order = []
        for k in range(3):
            i, j = tri[k], tri[(k + 1) % 3]
            for t, g in edge_pts.get(ekey(i, j), []):
                tt = t if i < j else 1.0 - t
                pts[g] = geo.lerp(P[k], P[(k + 1) % 3], tt)
                order.append(g)
        for g, p in face_pts.get(f, []):
            pts[g] = s.coords_in_face(p, f)
            order.append(g)
        loc = _Local(pts, tri)
        for g in order:
            loc.insert(g)
        for a, b in cons.get(f, []):
            loc.recover(a, b)
        for t in loc.tris:
            tris.append(t)
            for k in range(3):
                a, b = t[k], t[(k + 1) % 3]
                lengths.setdefault(ekey(a, b), geo.dist(pts[a], pts[b]))
    verts = sorted(set(s.vertices) | {v for t in tris for v in t})
    return IntrinsicSurface(verts, tris, lengths), id_lists, [e[1] for e in expanded]


def insert_chain(s: IntrinsicSurface, pts: Sequence[SurfacePoint], closed: bool,
                 subdivide: bool = True) -> ChainInsertion:
    new, ids, src = insert_points_and_chains(s, [(pts, closed)], subdivide)
    ids, src = ids[0], src[0]
    n = len(ids)
    edges = [(ids[i], ids[(i + 1) % n]) for i in range(n if closed else n - 1)]
    for u, v in edges:
        if ekey(u, v) not in new.lengths:
            raise SurfaceError(f"chain edge ({u}, {v}) missing after insertion")
    return ChainInsertion(new, ids, src, edges)


# --------------------------------------------------------------------------
# sides of a chain


def wedge(s: IntrinsicSurface, v: int, out_to: int, back_to: int) -> List[int]:
    """Faces swept counterclockwise around v from edge v->out_to to edge v->back_to.

    When the two edges coincide the whole star is returned (fold).
    """
    order, closed = s.star(v)
    start = None
    for idx, (f, k) in enumerate(order):
        if s.triangles[f][(k + 1) % 3] == out_to:
            start = idx
            break
    if start is None:
        raise SurfaceError(f"edge ({v}, {out_to}) does not start a wedge")
    faces = []
    n = len(order)
    for step in range(n):
        idx = (start + step) % n
        if not closed and idx < start and step > 0:
            break
        f, k = order[idx]
        faces.append(f)
        if s.triangles[f][(k + 2) % 3] == back_to:
            break
    return faces


def chain_sides(s: IntrinsicSurface, ids: Sequence[int], closed: bool) -> Tuple[Set[int], Set[int]]:
    """Faces on the left and on the right of a closed chain of mesh edges.

    Seeds come from the wedges at each chain vertex; regions then grow
    across edges that are not chain edges. A fold (the chain returning
    along the edge it came from) puts the whole star on the left, so the
    right side of a doubled segment is empty.
    """
    n = len(ids)
    chain_edges = {ekey(ids[i], ids[(i + 1) % n]) for i in range(n if closed else n - 1)}
    left_seed, right_seed = set(), set()
    for i in range(n):
        if not closed and (i == 0 or i == n - 1):
            continue
        v, nxt, prv = ids[i], ids[(i + 1) % n], ids[i - 1]
        lw = wedge(s, v, nxt, prv)
        left_seed.update(lw)
        if nxt != prv:
            right_seed.update(wedge(s, v, prv, nxt))
    adj: Dict[int, List[int]] = {}
    for e, faces in s.edge_faces.items():
        if e in chain_edges:
            continue
        for a in faces:
            for b in faces:
                if a != b:
                    adj.setdefault(a, []).append(b)

    def grow(seed):
        seen = set(seed)
        stack = list(seed)
        while stack:
            f = stack.pop()
            for g in adj.get(f, []):
                if g not in seen:
                    seen.add(g)
                    stack.append(g)
        return seen

    left = grow(left_seed)
    right = grow(right_seed - left) if right_seed - left else set()
    if left & right:
        raise SurfaceError("chain does not separate the surface")
    return left, right


def subdivide_edge(s: IntrinsicSurface, u: int, v: int, t: float = 0.5) -> Tuple[IntrinsicSurface, int]:
    """Split edge uv at parameter t, splitting its one or two faces."""
    g = s.next_vertex_id()
    L = s.length(u, v)
    tris, lengths = [], dict(s.lengths)
    del lengths[ekey(u, v)]
    lengths[ekey(u, g)] = t * L
    lengths[ekey(g, v)] = (1 - t) * L
    for f, tri in enumerate(s.triangles):
        k = None
        for j in range(3):
            if {tri[j], tri[(j + 1) % 3]} == {u, v}:
                k = j
        if k is None:
            tris.append(tri)
            continue
        a, b, c = tri[k], tri[(k + 1) % 3], tri[(k + 2) % 3]
        P = s.layout(f)
        pa, pb, pc = P[k], P[(k + 1) % 3], P[(k + 2) % 3]
        tt = t if a == u else 1 - t
        pg = geo.lerp(pa, pb, tt)
        lengths[ekey(g, c)] = geo.dist(pg, pc)
        tris.append((a, g, c))
        tris.append((g, b, c))
    return IntrinsicSurface(list(s.vertices) + [g], tris, lengths), g

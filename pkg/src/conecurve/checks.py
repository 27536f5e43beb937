"""Acceptance checks over the gallery, plus randomized invariant suites.

Each criterion returns a CriterionResult holding one Check per assertion.
``measure_expected`` recomputes every expected value a gallery item
records, so each record can be compared against the library's own output.
"""
from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence

import numpy as np

from . import geometry as geo
from .cone import (ConePlacement, check_visibility, cone_congruent, development_placement, fit_cone,
                   guaranteed_sides, nested_transfer, visibility_by_rays)
from .config import DEFAULT_TOL
from .curve import SurfaceCurve, classify, corners, curvature_partition, side_angles, validate_curve
from .develop import develop_all, develop_curve, side_turn, simple_fraction
from .errors import ConeCurveError, SurgeryError
from .gallery import GalleryItem, build, geodesic_polygon, hull_surface
from .geodesic import shortest_path
from .oracles import facewalk_distance
from .surface import IntrinsicSurface, SurfacePoint, ekey
from .surgery import merge_to_cone, merge_vertices, reflex_cone_construction, split

PI = math.pi


@dataclass
class Check:
    label: str
    passed: bool
    detail: str = ""

    def to_json(self) -> dict:
        return {"label": self.label, "passed": self.passed, "detail": self.detail}


@dataclass
class CriterionResult:
    number: int
    title: str
    example: str
    checks: List[Check] = field(default_factory=list)
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return bool(self.checks) and all(c.passed for c in self.checks)

    def add(self, label: str, passed: bool, detail: str = "") -> bool:
        self.checks.append(Check(label, bool(passed), detail))
        return bool(passed)

    def to_json(self) -> dict:
        return {"number": self.number, "title": self.title, "example": self.example, "passed": self.passed,
                "seconds": self.seconds, "checks": [c.to_json() for c in self.checks]}


def _near(x: float, y: float, tol: float) -> bool:
    return abs(x - y) <= tol


def _fmt(x: float) -> str:
    return f"{x:.15g}"


# --------------------------------------------------------------------------
# measured counterparts of gallery expectations


def side_label(cls, side: str) -> str:
    sc = cls.side(side)
    for flag, name in ((sc.convex, "convex"), (sc.convex_loop, "convex loop"), (sc.reflex, "reflex"),
                       (sc.reflex_loop, "reflex loop")):
        if flag:
            return name
    return "unclassified"


def _common(values: Sequence[float], tol: float):
    """The shared value of a list, or the list itself when its entries differ."""
    values = list(values)
    if values and all(abs(v - values[0]) <= tol for v in values):
        return values[0]
    return values


def _cone_dict(fit):
    return fit.cone.to_json() if fit.cone is not None else None


def _open_development_simple(c: SurfaceCurve, corner_ids: Sequence[int], tol: float) -> bool:
    d = develop_curve(c, (corner_ids[0], 0.0), "left", tol)
    pts = []
    for p, i in zip(d.points, d.indices):
        pts.append(p)
        if i == corner_ids[-1] and len(pts) > 1:
            break
    return not geo.polyline_self_intersections(pts, closed=False, tol=tol, first_only=True)


def measure_expected(item: GalleryItem, tol: float = DEFAULT_TOL) -> Dict[str, object]:
    """Recompute every expected value of a gallery item with the library."""
    s, c = item.surface, item.curve
    name = item.name
    m: Dict[str, Callable[[], object]] = {}
    if name == "house":
        v1, v2 = item.extras["ridge"]
        m = {
            "corner_left_angle": lambda: _common([cd.alpha for cd in corners(c, tol)], tol),
            "corner_right_angle": lambda: _common([cd.beta for cd in corners(c, tol)], tol),
            "ridge_curvature": lambda: _common([s.curvature(v1), s.curvature(v2)], tol),
            "omega_left": lambda: curvature_partition(c, tol).omega_left,
            "tau_left": lambda: curvature_partition(c, tol).tau_left,
            "classes": lambda: classify(c, tol).names(),
            "left_cone": lambda: _cone_dict(fit_cone(c, "left", tol=tol)),
            "merged_curvature": lambda: merge_vertices(s, v1, v2)[1].omega,
            "ridge_length": lambda: s.length(v1, v2),
        }
    elif name == "house_with_spike":
        sh, short = item.curves["shifted"], item.curves["short"]
        m = {
            "omega_left": lambda: curvature_partition(c, tol).omega_left,
            "loop_point": lambda: c.loop_point,
            "left_fit_lives_on_cone": lambda: fit_cone(c, "left", tol=tol).lives_on_cone,
            "left_fit_apex_enclosed": lambda: fit_cone(c, "left", tol=tol).apex_enclosed,
            "left_cone": lambda: _cone_dict(fit_cone(c, "left", tol=tol)),
            "short_lives_on_cone": lambda: fit_cone(short, "left", tol=tol).lives_on_cone,
            "shifted_lives_on_cone": lambda: fit_cone(sh, "left", tol=tol).lives_on_cone,
            "shifted_visible": lambda: check_visibility(fit_cone(sh, "left", tol=tol)).visible,
        }
    elif name == "pentagon":
        def rejected():
            s2, rec = merge_vertices(s, 1, 2)
            try:
                merge_vertices(s2, rec.new_vertex, 3)
            except SurgeryError:
                return True
            return False

        m = {
            "curvatures": lambda: {v: s.curvature(v) for v in s.vertices},
            "omega_left": lambda: curvature_partition(c, tol).omega_left,
            "left_cone": lambda: _cone_dict(fit_cone(c, "left", tol=tol)),
            "merge_v1_v2": lambda: merge_vertices(s, 1, 2)[1].omega,
            "merge_v12_v3_rejected": rejected,
            "right_area": lambda: split(c, tol)[1].surface.area(),
        }
    elif name == "icosahedron":
        m = {
            "vertex_curvature": lambda: _common([s.curvature(v) for v in s.vertices], tol),
            "total_curvature": lambda: s.total_curvature(),
            "corner_angles": lambda: [_common([cd.alpha for cd in corners(c, tol)], tol),
                                      _common([cd.beta for cd in corners(c, tol)], tol)],
            "n_corners": lambda: len(corners(c, tol)),
            "omega_left": lambda: curvature_partition(c, tol).omega_left,
            "omega_curve": lambda: curvature_partition(c, tol).omega_curve,
            "omega_right": lambda: curvature_partition(c, tol).omega_right,
            "classes": lambda: classify(c, tol).names(),
            "left_cone": lambda: _cone_dict(fit_cone(c, "left", tol=tol)),
            "right_cone": lambda: _cone_dict(fit_cone(c, "right", tol=tol)),
        }
    elif name == "cuboctahedron_hexagon":
        m = {
            "left_angles": lambda: [cd.alpha for cd in corners(c, tol)],
            "right_angles": lambda: [cd.beta for cd in corners(c, tol)],
            "classes": lambda: {side: side_label(classify(c, tol), side) for side in ("left", "right")},
            "omega_left": lambda: curvature_partition(c, tol).omega_left,
        }
    elif name == "cuboctahedron_loop":
        w = item.params["vertex_waypoint"]
        m = {
            "alpha_5": lambda: side_angles(c, w)[0],
            "beta_5": lambda: side_angles(c, w)[1],
            "omega_left": lambda: curvature_partition(c, tol).omega_left,
            "omega_curve": lambda: curvature_partition(c, tol).omega_curve,
            "omega_right": lambda: curvature_partition(c, tol).omega_right,
            "right_cone": lambda: _cone_dict(fit_cone(c, "right", tol=tol)),
            "right_apex_side": lambda: fit_cone(c, "right", tol=tol).apex_side,
            "classes": lambda: {side: side_label(classify(c, tol), side) for side in ("left", "right")},
        }
    elif name == "qg_loop_star":
        m = {
            "classes": lambda: classify(c, tol).names(),
            "right_cone": lambda: _cone_dict(fit_cone(c, "right", tol=tol)),
            "right_lives_on_cone": lambda: fit_cone(c, "right", tol=tol).lives_on_cone,
            "left_lives_on_cone": lambda: fit_cone(c, "left", tol=tol).lives_on_cone,
            "polygon_angle_at_tip": lambda: side_angles(c, c.loop_point)[1],
        }
    elif name == "spiral_cone":
        oc = item.extras["open_corners"]
        m = {
            "apex_curvature": lambda: s.curvature(0),
            "omega_left": lambda: curvature_partition(c, tol).omega_left,
            "open_turns": lambda: [side_turn(c, i, "left") for i in oc[1:4]],
            "open_development_simple": lambda: _open_development_simple(c, oc, tol),
            "simple_fraction": lambda: simple_fraction(develop_all(c, "left", 64, tol)),
        }
    elif name == "icosa_zigzag":
        inner = item.curves["geodesic"]
        m = {
            "inner_corners": lambda: len(corners(inner, tol)),
            "inner_length": lambda: inner.length(),
            "omega_left": lambda: curvature_partition(inner, tol).omega_left,
            "inner_cone": lambda: _cone_dict(fit_cone(inner, "left", tol=tol)),
            "outer_cone": lambda: _cone_dict(nested_transfer(c, inner, tol)),
        }
    missing = set(item.expected) - set(m)
    if missing:
        raise ConeCurveError(f"no measurement for {name} expectations {sorted(missing)}")
    return {k: m[k]() for k in item.expected}


def matches(key: str, expected, measured, tol: float) -> bool:
    """Expected-value comparison; class lists need only be contained in the measured names."""
    if key == "classes" and isinstance(expected, list):
        return isinstance(measured, list) and set(expected) <= set(measured)
    if isinstance(expected, bool) or expected is None or isinstance(expected, str):
        return measured == expected
    if isinstance(expected, (int, float)):
        return (isinstance(measured, (int, float)) and not isinstance(measured, bool)
                and abs(measured - expected) <= tol)
    if isinstance(expected, (list, tuple)):
        return (isinstance(measured, (list, tuple)) and len(measured) == len(expected)
                and all(matches("", e, v, tol) for e, v in zip(expected, measured)))
    if isinstance(expected, dict):
        return isinstance(measured, dict) and all(k in measured and matches("", e, measured[k], tol)
                                                  for k, e in expected.items())
    return measured == expected


def verify_item(item: GalleryItem, tol: float = DEFAULT_TOL) -> List[Check]:
    """One check per expected value, plus surface and curve validity."""
    from .surface import validate_surface

    out = [Check("surface valid", validate_surface(item.surface, tol).ok)]
    for key, c in item.curves.items():
        out.append(Check(f"curve {key} valid", validate_curve(c, tol).ok))
    measured = measure_expected(item, tol)
    for key, ex in item.expected.items():
        got = measured[key]
        out.append(Check(f"{key} [{ex.basis}]", matches(key, ex.value, got, tol),
                         f"expected {ex.value!r}, measured {got!r}"))
    return out


# --------------------------------------------------------------------------
# criteria over the worked examples


def criterion_1(tol: float = DEFAULT_TOL) -> CriterionResult:
    r = CriterionResult(1, "house: convex left, cone of apex angle pi, merged ridge", "house")
    it = build("house")
    c, s = it.curve, it.surface
    cls = classify(c, tol)
    r.add("convex to the left", cls.convex_left, ", ".join(cls.names()))
    fit = fit_cone(c, "left", tol=tol)
    ok = fit.cone is not None and fit.cone.variant == "proper" and _near(fit.cone.apex_angle, PI, 1e-9)
    r.add("left fit proper, apex angle pi", ok, str(fit.cone))
    v1, v2 = it.extras["ridge"]
    _, rec = merge_vertices(s, v1, v2)
    r.add("merged ridge curvature pi", _near(rec.omega, PI, 1e-9), _fmt(rec.omega / PI) + " pi")
    left, _ = split(c, tol)
    cc = merge_to_cone(left)
    r.add("merge_to_cone congruent with the fit", cone_congruent(cc.placement, fit, 1e-9), str(cc.cone))
    return r


def criterion_2(tol: float = DEFAULT_TOL) -> CriterionResult:
    r = CriterionResult(2, "pentagon: omega_left 2pi, cylinder, merge order independence", "pentagon")
    it = build("pentagon")
    c = it.curve
    om = curvature_partition(c, tol).omega_left
    r.add("omega_left = 2pi", _near(om, 2 * PI, 1e-9), _fmt(om / PI) + " pi")
    fit = fit_cone(c, "left", tol=tol)
    r.add("left fit cylinder", fit.cone is not None and fit.cone.variant == "cylinder", str(fit.cone))
    left, _ = split(c, tol)
    a = merge_to_cone(left, order=[1, 2, 3])
    b = merge_to_cone(left, order=[2, 3, 1])
    r.add("order (1,2) then 3 gives a cylinder", a.cone.variant == "cylinder", str(a.cone))
    r.add("order (2,3) then 1 gives a cylinder", b.cone.variant == "cylinder", str(b.cone))
    r.add("both orders congruent", cone_congruent(a.placement, b.placement, 1e-9))
    r.add("both orders congruent with the fit",
          cone_congruent(a.placement, fit, 1e-9) and cone_congruent(b.placement, fit, 1e-9))
    return r


def criterion_3(tol: float = DEFAULT_TOL) -> CriterionResult:
    r = CriterionResult(3, "icosahedron link: quasigeodesic, proper left, cylinder right", "icosahedron")
    c = build("icosahedron").curve
    cls = classify(c, tol)
    r.add("quasigeodesic", cls.quasigeodesic, ", ".join(cls.names()))
    fl = fit_cone(c, "left", tol=tol)
    ok = fl.cone is not None and fl.cone.variant == "proper" and _near(fl.cone.apex_curvature, PI / 3, 1e-9)
    r.add("left fit proper, apex curvature pi/3", ok, str(fl.cone))
    fr = fit_cone(c, "right", tol=tol)
    r.add("right fit cylinder", fr.cone is not None and fr.cone.variant == "cylinder", str(fr.cone))
    rc = reflex_cone_construction(c, tol)
    r.add("reflex construction gives a cylinder", rc.cone.variant == "cylinder", str(rc.cone))
    r.add("reflex construction congruent with the right fit", cone_congruent(rc.placement, fr, 1e-9))
    return r


def criterion_4(tol: float = DEFAULT_TOL) -> CriterionResult:
    r = CriterionResult(4, "cuboctahedron loop: curvature split, proper right cone, apex side",
                        "cuboctahedron_loop")
    c = build("cuboctahedron_loop").curve
    rep = curvature_partition(c, tol)
    for label, got, want in (("omega_left = 2pi/3", rep.omega_left, 2 * PI / 3),
                             ("omega_curve = pi/3", rep.omega_curve, PI / 3),
                             ("omega_right = 3pi", rep.omega_right, 3 * PI)):
        r.add(label, _near(got, want, 1e-9), _fmt(got / PI) + " pi")
    fr = fit_cone(c, "right", tol=tol)
    ok = fr.cone is not None and fr.cone.variant == "proper" and _near(fr.cone.apex_curvature, PI, 1e-9)
    r.add("right fit proper, apex curvature pi", ok, str(fr.cone))
    r.add("apex lies left of the curve", fr.apex_side == "left", str(fr.apex_side))
    return r


def criterion_5(tol: float = DEFAULT_TOL) -> CriterionResult:
    r = CriterionResult(5, "counterexamples: spike loop, shifted spike, glued star",
                        "house_with_spike, qg_loop_star")
    it = build("house_with_spike")
    f = fit_cone(it.curves["C"], "left", tol=tol)
    r.add("spike loop does not live on its left cone", not f.lives_on_cone)
    r.add("spike loop does not enclose the apex", not f.apex_enclosed)
    fs = fit_cone(it.curves["shifted"], "left", tol=tol)
    vis = check_visibility(fs)
    r.add("shifted spike not visible", not vis.visible)
    r.add("shifted spike has a witness generator", vis.witness is not None, str(vis.witness))
    c = build("qg_loop_star").curve
    fr, fl = fit_cone(c, "right", tol=tol), fit_cone(c, "left", tol=tol)
    r.add("star loop right fit planar", fr.cone is not None and fr.cone.variant == "planar", str(fr.cone))
    r.add("star loop lives on its right cone", fr.lives_on_cone)
    r.add("star loop does not live on its left cone", not fl.lives_on_cone)
    return r


def criterion_6(tol: float = DEFAULT_TOL, samples: int = 64) -> CriterionResult:
    r = CriterionResult(6, "development sweeps: simple where guaranteed, never simple on the spiral",
                        "house, icosahedron, cuboctahedron_loop, spiral_cone")
    for name in ("house", "icosahedron", "cuboctahedron_loop"):
        c = build(name).curve
        sides = guaranteed_sides(c, tol)
        r.add(f"{name}: both sides guaranteed", sides == ["left", "right"], str(sides))
        for side in sides:
            frac = simple_fraction(develop_all(c, side, samples, tol))
            r.add(f"{name} {side}: all developments simple", frac == 1.0, f"{frac:.0%}")
    for eps_rel in (1e-3, 5e-4, 2e-3):
        c = build("spiral_cone", eps_rel=eps_rel).curve
        frac = simple_fraction(develop_all(c, "left", samples, tol))
        r.add(f"spiral eps_rel={eps_rel:g}: no development simple", frac == 0.0, f"{frac:.0%}")
    return r


def criterion_8(tol: float = DEFAULT_TOL) -> CriterionResult:
    r = CriterionResult(8, "nested transfer: zigzag inherits the geodesic's cylinder", "icosa_zigzag")
    it = build("icosa_zigzag")
    outer, inner = it.curves["C"], it.curves["geodesic"]
    fi = fit_cone(inner, "left", tol=tol)
    r.add("geodesic lives on a cylinder", fi.cone is not None and fi.cone.variant == "cylinder"
          and fi.lives_on_cone, str(fi.cone))
    fo = nested_transfer(outer, inner, tol)
    r.add("zigzag fit is a cylinder", fo.cone is not None and fo.cone.variant == "cylinder", str(fo.cone))
    r.add("same cylinder within 1e-9",
          cone_congruent(ConePlacement(fo.cone), ConePlacement(fi.cone), 1e-9),
          f"{_fmt(fo.cone.circumference)} vs {_fmt(fi.cone.circumference)}")
    r.add("zigzag lives on it", fo.lives_on_cone)
    return r


# --------------------------------------------------------------------------
# randomized invariants


def random_solid(rng: np.random.Generator):
    """(surface, positions) of a random convex solid with at most 30 faces.

    Half the draws are points on a random ellipsoid; the rest jitter the
    vertices of a gallery solid by a few percent of its size.
    """
    from .gallery import _house_points, house_geometry

    while True:
        kind = rng.integers(4)
        if kind == 0:
            n = int(rng.integers(6, 17))
            u = rng.normal(size=(n, 3))
            u /= np.linalg.norm(u, axis=1)[:, None]
            P = u * rng.uniform(0.5, 2.0, size=3)
        else:
            if kind == 1:
                phi = (1 + math.sqrt(5.0)) / 2
                base = [(0, a, b) for a in (-1, 1) for b in (-phi, phi)]
                base = [p for q in base for p in (q, (q[1], q[2], 0), (q[2], 0, q[1]))]
            elif kind == 2:
                base = [(0, a, b) for a in (-1, 1) for b in (-1, 1)]
                base = [p for q in base for p in (q, (q[1], q[2], 0), (q[2], 0, q[1]))]
            else:
                g = house_geometry(3.0, math.sqrt(2.0))
                base = _house_points(g["X"], g["Y"], g["W"], g["h"], g["r"])
            B = np.array(base, dtype=float)
            B /= np.max(np.linalg.norm(B - B.mean(axis=0), axis=1))
            P = B + rng.normal(scale=0.03, size=B.shape)
        try:
            s, P = hull_surface(P)
        except Exception:
            continue
        used = {v for t in s.triangles for v in t}
        if len(used) == len(P) and len(s.triangles) <= 30 and min(s.curvatures().values()) > 1e-3:
            return s, P


def slice_curve(s: IntrinsicSurface, P: np.ndarray, rng: np.random.Generator) -> Optional[SurfaceCurve]:
    """Closed curve where a random plane cuts the solid, waypoints on the crossed edges."""
    nrm = rng.normal(size=3)
    nrm /= np.linalg.norm(nrm)
    h = P @ nrm
    level = h.min() + rng.uniform(0.15, 0.85) * (h.max() - h.min())
    pts, where = [], []
    for (a, b) in sorted({ekey(t[k], t[(k + 1) % 3]) for t in s.triangles for k in range(3)}):
        if (h[a] - level) * (h[b] - level) < 0:
            t = (level - h[a]) / (h[b] - h[a])
            if not 1e-3 < t < 1 - 1e-3:
                return None
            pts.append(P[a] + t * (P[b] - P[a]))
            where.append(SurfacePoint.on_edge(a, b, t))
    X = np.array(pts)
    centre = X.mean(axis=0)
    e1 = np.cross(nrm, [1.0, 0.0, 0.0] if abs(nrm[0]) < 0.9 else [0.0, 1.0, 0.0])
    e1 /= np.linalg.norm(e1)
    e2 = np.cross(nrm, e1)
    ang = np.arctan2((X - centre) @ e2, (X - centre) @ e1)
    c = SurfaceCurve(s, [where[k] for k in np.argsort(ang)])
    return c if validate_curve(c).ok else None


def random_point(s: IntrinsicSurface, rng: np.random.Generator, vertex_chance: float = 0.0) -> SurfacePoint:
    if rng.uniform() < vertex_chance:
        return SurfacePoint.at_vertex(int(rng.choice(list(s.vertices))))
    f = int(rng.integers(len(s.triangles)))
    bary = rng.dirichlet([2.0, 2.0, 2.0])
    return SurfacePoint.in_face(s.triangles[f], bary)


def polygon_curve(s: IntrinsicSurface, rng: np.random.Generator) -> Optional[SurfaceCurve]:
    """Geodesic triangle or quadrilateral on random corners, some of them at vertices."""
    k = int(rng.integers(3, 5))
    cs = [random_point(s, rng, vertex_chance=0.3) for _ in range(k)]
    if len({p.key() for p in cs}) < k:
        return None
    try:
        c = SurfaceCurve(s, geodesic_polygon(s, cs))
    except ConeCurveError:
        return None
    return c if validate_curve(c).ok else None


def _placement_at(c: SurfaceCurve, side: str, cut, tol: float):
    d = develop_curve(c, cut, side, tol)
    T = d.total_turn
    fit = fit_cone(c, side, tol=tol)
    # an apex on the curve leaves the polar angle of that waypoint undefined
    if fit.cone is None or fit.cone.variant != "proper" or fit.degenerate:
        return None
    apex = geo.rotation_center(d.x1, d.x2, T)
    return development_placement(d, c.n, fit.cone, T, apex=apex)


@dataclass
class PropertyStats:
    cases: int = 0
    failures: List[str] = field(default_factory=list)
    worst: float = 0.0

    def record(self, ok: bool, what: str, err: float = 0.0):
        self.cases += 1
        self.worst = max(self.worst, err)
        if not ok and len(self.failures) < 20:
            self.failures.append(what)

    @property
    def failed(self) -> int:
        return len(self.failures)


def property_suite(n_cases: int = 1000, seed: int = 20240601, tol: float = DEFAULT_TOL) -> Dict[str, PropertyStats]:
    """Gauss-Bonnet, cut independence, visibility and shortest-path agreement on random solids.

    Each case draws a solid, a curve on it (a plane slice or a geodesic
    polygon) and a pair of points; every invariant is evaluated on it.
    """
    rng = np.random.default_rng(seed)
    stats = {k: PropertyStats() for k in ("gauss_bonnet", "cut_independence", "visibility", "shortest_path")}
    done = 0
    while done < n_cases:
        s, P = random_solid(rng)
        c = slice_curve(s, P, rng) if rng.uniform() < 0.5 else polygon_curve(s, rng)
        if c is None:
            continue
        done += 1
        tag = f"case {done}"
        rep = curvature_partition(c, tol)
        err = max(abs(x) for x in rep.identities().values())
        stats["gauss_bonnet"].record(err < 1e-7, f"{tag}: residual {err:.3g}", err)

        side = "left" if rng.uniform() < 0.5 else "right"
        cuts = [(int(rng.integers(c.n)), float(rng.uniform(0.05, 0.95))) for _ in range(3)]
        pl = [_placement_at(c, side, cut, tol) for cut in cuts]
        if all(p is not None for p in pl):
            ok = all(cone_congruent(pl[i], pl[j], 1e-9) for i in range(3) for j in range(i + 1, 3))
            stats["cut_independence"].record(ok, f"{tag}: {side} cuts {cuts}")

        fit = fit_cone(c, side, tol=tol)
        if fit.cone is not None and fit.cone.variant in ("proper", "cylinder") and fit.winding_ok:
            brute = visibility_by_rays(fit, 10_000)
            stats["visibility"].record(brute == fit.visible, f"{tag}: fit {fit.visible}, rays {brute}")

        x, y = random_point(s, rng), random_point(s, rng)
        fast = shortest_path(s, x, y).length
        slow = facewalk_distance(s, x, y, depth=len(s.triangles))
        stats["shortest_path"].record(abs(fast - slow) <= 1e-9, f"{tag}: {fast!r} vs {slow!r}", abs(fast - slow))
    return stats


def criterion_7(tol: float = DEFAULT_TOL, n_cases: int = 1000, seed: int = 20240601) -> CriterionResult:
    r = CriterionResult(7, "randomized invariants on perturbed convex solids", "random hulls, jittered solids")
    stats = property_suite(n_cases, seed, tol)
    labels = {
        "gauss_bonnet": "Gauss-Bonnet identities below 1e-7",
        "cut_independence": "three cut points give congruent placements",
        "visibility": "monotone-angle visibility equals the 10^4-ray oracle",
        "shortest_path": "shortest path equals the face-walk oracle within 1e-9",
    }
    for key, st in stats.items():
        detail = f"{st.cases} cases, {st.failed} failures"
        if key in ("gauss_bonnet", "shortest_path"):
            detail += f", worst {st.worst:.2g}"
        if st.failures:
            detail += "; " + "; ".join(st.failures[:3])
        r.add(labels[key], st.cases > 0 and not st.failures, detail)
    r.add(f"at least {n_cases} cases", stats["gauss_bonnet"].cases >= n_cases, str(stats["gauss_bonnet"].cases))
    return r


CRITERIA: Dict[int, Callable[..., CriterionResult]] = {
    1: criterion_1, 2: criterion_2, 3: criterion_3, 4: criterion_4,
    5: criterion_5, 6: criterion_6, 7: criterion_7, 8: criterion_8,
}


def run_criterion(number: int, tol: float = DEFAULT_TOL, **kw) -> CriterionResult:
    t = time.perf_counter()
    try:
        r = CRITERIA[number](tol, **kw)
    except ConeCurveError as e:
        r = CriterionResult(number, CRITERIA[number].__name__, "")
        r.add("raised", False, repr(e))
    r.seconds = time.perf_counter() - t
    return r


def run_all(tol: float = DEFAULT_TOL, n_cases: int = 1000) -> List[CriterionResult]:
    return [run_criterion(k, tol, **({"n_cases": n_cases} if k == 7 else {})) for k in sorted(CRITERIA)]


def format_table(results: Sequence[CriterionResult], verbose: bool = False) -> str:
    rows = [("#", "result", "seconds", "example", "criterion")]
    for r in results:
        rows.append((str(r.number), "PASS" if r.passed else "FAIL", f"{r.seconds:.1f}", r.example, r.title))
    widths = [max(len(row[k]) for row in rows) for k in range(4)]
    lines = []
    for row in rows:
        lines.append("  ".join(row[k].ljust(widths[k]) for k in range(4)) + "  " + row[4])
    if verbose:
        for r in results:
            lines.append(f"\n[{r.number}] {r.title}")
            for ch in r.checks:
                lines.append(f"  {'ok  ' if ch.passed else 'FAIL'} {ch.label}" + (f"  ({ch.detail})" if ch.detail else ""))
    total = sum(r.seconds for r in results)
    lines.append(f"{sum(r.passed for r in results)}/{len(results)} criteria passed in {total:.1f} s")
    return "\n".join(lines) + "\n"

"""Deterministic JSON reports and SVG drawings of developments."""
from __future__ import annotations

import json
import math
from fractions import Fraction
from typing import Optional, Sequence

from . import geometry as geo

SIG_DIGITS = 12
MAX_PI_DENOMINATOR = 24

# keys whose values are angles; each gets a sibling "<key>_pi" when it is a simple multiple of pi
ANGLE_KEYS = frozenset({
    "alpha", "beta", "omega", "tau_left", "tau_right", "omega_left", "omega_curve", "omega_right",
    "apex_angle", "apex_curvature", "total_turn", "cut_turn", "turns", "gap_angle", "new_omega",
    "curvature", "curvatures", "angle_sum", "total_curvature", "left_angle", "right_angle",
    "base_angles", "polygon_angle", "increments",
})


def pi_fraction(x: float, tol: float = 1e-9) -> Optional[str]:
    """'p/q' with x = p/q * pi (q <= 24) within tol, else None."""
    if not math.isfinite(x):
        return None
    f = Fraction(x / math.pi).limit_denominator(MAX_PI_DENOMINATOR)
    if abs(x - float(f) * math.pi) > tol:
        return None
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def _round(x: float):
    if not math.isfinite(x):
        return str(x)
    y = float(f"{x:.{SIG_DIGITS}g}")
    return 0.0 if y == 0 else y


def _annotate(key, value, tol):
    if isinstance(value, bool) or value is None:
        return None
    if isinstance(value, (int, float)):
        return pi_fraction(float(value), tol)
    if isinstance(value, (list, tuple)) and value and all(isinstance(v, (int, float)) and not isinstance(v, bool)
                                                          for v in value):
        return [pi_fraction(float(v), tol) for v in value]
    if isinstance(value, dict) and value and all(isinstance(v, (int, float)) and not isinstance(v, bool)
                                                 for v in value.values()):
        return {k: pi_fraction(float(v), tol) for k, v in value.items()}
    return None


def normalize(obj, tol: float = 1e-9):
    """Round floats to 12 significant digits and add pi fractions next to angle fields."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, int):
        return obj
    if isinstance(obj, float):
        return _round(obj)
    if hasattr(obj, "item") and callable(obj.item):  # numpy scalars
        return normalize(obj.item(), tol)
    if isinstance(obj, dict):
        out = {}
        for k, v in obj.items():
            key = str(k)
            out[key] = normalize(v, tol)
            if key in ANGLE_KEYS:
                ann = _annotate(key, v, tol)
                if ann is not None:
                    out[key + "_pi"] = ann
        return out
    if isinstance(obj, (list, tuple)):
        return [normalize(v, tol) for v in obj]
    if hasattr(obj, "to_json"):
        return normalize(obj.to_json(), tol)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj, tol: float = 1e-9) -> str:
    """Byte-stable JSON text for a report object."""
    return json.dumps(normalize(obj, tol), indent=2, ensure_ascii=False) + "\n"


# --------------------------------------------------------------------------
# SVG


def _fmt(x: float) -> str:
    s = f"{x:.3f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


def development_svg(points: Sequence[geo.Point], scale: float = 100.0, corners: Sequence[int] = (),
                    apex: Optional[geo.Point] = None, cut_radii: bool = False,
                    generator: Optional[geo.Point] = None, title: str = "") -> str:
    """Self-contained SVG of a developed chain, y axis up.

    ``corners`` are indices into ``points``; the first and last points are
    the two images of the cut point. With an apex, ``cut_radii`` draws its
    segments to both cut images; a generator direction is drawn from x1.
    """
    pts = [(float(p[0]), float(p[1])) for p in points]
    extra = list(pts)
    if apex is not None:
        extra.append((float(apex[0]), float(apex[1])))
    xs = [p[0] for p in extra]
    ys = [p[1] for p in extra]
    span = max(max(xs) - min(xs), max(ys) - min(ys), 1e-9)
    pad = 0.08 * span
    x0, x1 = min(xs) - pad, max(xs) + pad
    y0, y1 = min(ys) - pad, max(ys) + pad
    w, h = (x1 - x0) * scale, (y1 - y0) * scale

    def tx(p):
        return _fmt((p[0] - x0) * scale), _fmt((y1 - p[1]) * scale)

    r = max(2.0, 0.01 * max(w, h))
    stroke = max(1.0, 0.004 * max(w, h))
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{_fmt(w)}" height="{_fmt(h)}" '
           f'viewBox="0 0 {_fmt(w)} {_fmt(h)}">']
    if title:
        out.append(f"<title>{_escape(title)}</title>")
    out.append('<rect width="100%" height="100%" fill="white"/>')
    if apex is not None and cut_radii:
        for p in (pts[0], pts[-1]):
            (ax, ay), (px, py) = tx(apex), tx(p)
            out.append(f'<line x1="{ax}" y1="{ay}" x2="{px}" y2="{py}" stroke="#888" '
                       f'stroke-width="{_fmt(stroke)}" stroke-dasharray="6 4"/>')
    if generator is not None:
        far = geo.add(pts[0], geo.scale(generator, span))
        (ax, ay), (px, py) = tx(pts[0]), tx(far)
        out.append(f'<line x1="{ax}" y1="{ay}" x2="{px}" y2="{py}" stroke="#888" '
                   f'stroke-width="{_fmt(stroke)}" stroke-dasharray="6 4"/>')
    poly = " ".join(",".join(tx(p)) for p in pts)
    out.append(f'<polyline points="{poly}" fill="none" stroke="black" stroke-width="{_fmt(stroke)}"/>')
    for k in corners:
        cx, cy = tx(pts[k])
        out.append(f'<circle cx="{cx}" cy="{cy}" r="{_fmt(r)}" fill="#1f77b4"/>')
    for p, colour in ((pts[0], "#d62728"), (pts[-1], "#2ca02c")):
        cx, cy = tx(p)
        out.append(f'<circle cx="{cx}" cy="{cy}" r="{_fmt(1.6 * r)}" fill="none" stroke="{colour}" '
                   f'stroke-width="{_fmt(stroke)}"/>')
    if apex is not None:
        cx, cy = tx(apex)
        out.append(f'<path d="M {cx} {cy} m -{_fmt(r)} 0 l {_fmt(2 * r)} 0 m -{_fmt(r)} -{_fmt(r)} '
                   f'l 0 {_fmt(2 * r)}" stroke="#9467bd" stroke-width="{_fmt(stroke)}"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _escape(s: str) -> str:
    return s.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


def development_figure(d, scale: float = 100.0, apex: Optional[geo.Point] = None,
                       generator: Optional[geo.Point] = None, tol: float = 1e-9) -> str:
    corners = [k for k in range(1, len(d.points) - 1) if abs(d.turns[k - 1]) > tol]
    title = f"{d.side} development, cut at arc {d.cut[0]} fraction {d.cut[1]:.6g}"
    return development_svg(d.points, scale, corners, apex=apex, cut_radii=apex is not None,
                           generator=generator, title=title)


def fit_figure(fit, scale: float = 100.0, tol: float = 1e-9) -> str:
    return development_figure(fit.development, scale, apex=fit.apex, generator=fit.generator, tol=tol)

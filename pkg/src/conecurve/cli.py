"""Command-line front end: ``conecurve <subcommand> ...``.

Every subcommand prints one JSON report on stdout. Exit status is 0 on
success, 1 on a geometric or validation failure and 2 on a usage error.
"""
from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from typing import List, Optional

from . import report
from .checks import format_table, run_all
from .cone import check_visibility, fit_cone
from .config import Config
from .curve import SurfaceCurve, classify, curvature_partition, validate_curve
from .develop import develop_all, develop_curve, is_simple, simple_fraction
from .errors import ConeCurveError
from .gallery import BUILDERS, build
from .surface import IntrinsicSurface, ekey, validate_surface
from .surgery import double_along_boundary, glue_polygon, merge_to_cone, merge_vertices, reflex_cone_construction, split

SIDES = {"L": "left", "R": "right", "left": "left", "right": "right"}


class UsageError(Exception):
    pass


def _read_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None
    except json.JSONDecodeError as e:
        raise UsageError(f"{path} is not JSON: {e}") from None


def _surface(args, cfg: Config) -> IntrinsicSurface:
    if not args.surface:
        raise UsageError("--surface is required")
    return IntrinsicSurface.from_json(_read_json(args.surface), cfg.tolerance)


def _curve(args, cfg: Config) -> SurfaceCurve:
    s = _surface(args, cfg)
    if not args.curve:
        raise UsageError("--curve is required")
    return SurfaceCurve.from_json(s, _read_json(args.curve))


def _write(path, text: str):
    with open(path, "w") as fh:
        fh.write(text)


def _parse_cut(text: str):
    """'3' cuts at waypoint 3, '0.25' at arc-length fraction 0.25, '2:0.5' halfway along arc 2."""
    try:
        if ":" in text:
            a, f = text.split(":", 1)
            return int(a), float(f)
        if text.lstrip("-").isdigit():
            return int(text)
        return float(text)
    except ValueError:
        raise UsageError(f"bad cut {text!r}") from None


# --------------------------------------------------------------------------
# subcommands; each returns (report object, exit code)


def cmd_validate(args, cfg):
    try:
        data = _read_json(args.surface)
        lengths = {ekey(int(i), int(j)): float(L) for i, j, L in data["edge_lengths"]}
        s = IntrinsicSurface(data["vertices"], data["triangles"], lengths)
    except (KeyError, TypeError, ValueError, ConeCurveError) as e:
        return {"surface": {"ok": False, "violations": [f"malformed surface: {e}"]}}, 1
    rep = validate_surface(s, cfg.tolerance)
    out = {"surface": rep.to_json()}
    ok = rep.ok
    if args.curve:
        if not ok:
            out["curve"] = {"ok": False, "violations": ["surface is invalid"]}
        else:
            cv = validate_curve(SurfaceCurve.from_json(s, _read_json(args.curve)), cfg.tolerance)
            out["curve"] = cv.to_json()
            ok = cv.ok
    return out, 0 if ok else 1


def cmd_classify(args, cfg):
    return classify(_curve(args, cfg), cfg.tolerance), 0


def cmd_partition(args, cfg):
    return curvature_partition(_curve(args, cfg), cfg.tolerance), 0


def cmd_fit_cone(args, cfg):
    fit = fit_cone(_curve(args, cfg), SIDES[args.side], tol=cfg.tolerance)
    if args.svg:
        _write(args.svg, report.fit_figure(fit, cfg.svg_scale, cfg.tolerance))
    return fit, 0


def cmd_visibility(args, cfg):
    fit = fit_cone(_curve(args, cfg), SIDES[args.side], tol=cfg.tolerance)
    return check_visibility(fit), 0


def cmd_develop(args, cfg):
    d = develop_curve(_curve(args, cfg), _parse_cut(args.cut), SIDES[args.side], cfg.tolerance)
    simple = is_simple(d, cfg.tolerance)
    if args.svg:
        _write(args.svg, report.development_figure(d, cfg.svg_scale, tol=cfg.tolerance))
    return {"development": d, "simple": simple.simple,
            "first_violation": list(simple.first_violation) if simple.first_violation else None}, 0


def cmd_develop_all(args, cfg):
    rows = develop_all(_curve(args, cfg), SIDES[args.side], args.samples or cfg.samples, cfg.tolerance)
    return {"simple_fraction": simple_fraction(rows),
            "rows": [{"cut": list(r.cut), "kind": r.kind, "simple": r.simple,
                      "violation": list(r.violation) if r.violation else None} for r in rows]}, 0


def cmd_merge(args, cfg):
    s2, rec = merge_vertices(_surface(args, cfg), args.v1, args.v2, config=cfg)
    if args.out:
        _write(args.out, report.dumps(s2.to_json()))
    return {"merge": rec, "surface": None if args.out else s2}, 0


def _construction(cc):
    return {**cc.to_json(), "placement": dataclasses.asdict(cc.placement)}


def cmd_merge_to_cone(args, cfg):
    halves = split(_curve(args, cfg), cfg.tolerance)
    half = halves[0] if SIDES[args.side] == "left" else halves[1]
    return _construction(merge_to_cone(half, config=cfg)), 0


def cmd_reflex_cone(args, cfg):
    return _construction(reflex_cone_construction(_curve(args, cfg), cfg.tolerance)), 0


def _half(args, cfg):
    left, right = split(_curve(args, cfg), cfg.tolerance)
    return left if SIDES[args.side] == "left" else right


def cmd_double(args, cfg):
    dbl = double_along_boundary(_half(args, cfg), cfg.tolerance)
    if args.out:
        _write(args.out, report.dumps(dbl.surface.to_json()))
    return {"mirror": dbl.mirror, "surface": None if args.out else dbl.surface,
            "total_curvature": dbl.surface.total_curvature()}, 0


def cmd_glue_polygon(args, cfg):
    data = _read_json(args.polygon)
    poly = data["polygon"] if isinstance(data, dict) else data
    s = glue_polygon(_half(args, cfg), poly, cfg.tolerance)
    if args.out:
        _write(args.out, report.dumps(s.to_json()))
    return {"validation": validate_surface(s, cfg.tolerance), "surface": None if args.out else s}, 0


def cmd_gallery(args, cfg):
    item = build(args.name)
    files = item.write(args.out)
    return {"name": item.name, "files": files}, 0


def cmd_check_paper(args, cfg):
    results = run_all(cfg.tolerance, n_cases=args.cases)
    sys.stdout.write(format_table(results, verbose=args.verbose))
    if args.json:
        _write(args.json, report.dumps([r.to_json() for r in results], cfg.tolerance))
    return None, 0 if all(r.passed for r in results) else 1


# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="conecurve", description=__doc__.splitlines()[0])
    p.add_argument("--config", help="JSON file with Config fields")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, surface=True, curve=True, side=False, helptext=None):
        sp = sub.add_parser(name, help=helptext)
        if surface:
            sp.add_argument("--surface", required=True)
        if curve:
            sp.add_argument("--curve", required=True)
        if side:
            sp.add_argument("--side", choices=sorted(SIDES), default="L")
        sp.set_defaults(func=fn)
        return sp

    sp = add("validate", cmd_validate, curve=False, helptext="check a surface and optionally a curve")
    sp.add_argument("--curve")
    add("classify", cmd_classify, helptext="curve classes")
    add("partition", cmd_partition, helptext="curvature on each side and on the curve")
    sp = add("fit-cone", cmd_fit_cone, side=True, helptext="cone the curve lives on to one side")
    sp.add_argument("--svg")
    add("visibility", cmd_visibility, side=True, helptext="visibility from the apex, with a witness")
    sp = add("develop", cmd_develop, side=True, helptext="development from one cut point")
    sp.add_argument("--cut", default="0")
    sp.add_argument("--svg")
    sp = add("develop-all", cmd_develop_all, side=True, helptext="simplicity over many cut points")
    sp.add_argument("--samples", type=int)
    sp = add("merge", cmd_merge, curve=False, helptext="merge two vertices")
    sp.add_argument("--v1", type=int, required=True)
    sp.add_argument("--v2", type=int, required=True)
    sp.add_argument("--out", help="write the merged surface here instead of into the report")
    add("merge-to-cone", cmd_merge_to_cone, side=True, helptext="merge one side's vertices into a cone apex")
    add("reflex-cone", cmd_reflex_cone, helptext="right cone of a left-convex curve by curvature insertion")
    sp = add("double", cmd_double, side=True, helptext="double one side along the curve")
    sp.add_argument("--out")
    sp = add("glue-polygon", cmd_glue_polygon, side=True, helptext="close one side with a planar polygon")
    sp.add_argument("--polygon", required=True, help="JSON list of points, one per curve waypoint")
    sp.add_argument("--out")
    sp = add("gallery", cmd_gallery, surface=False, curve=False, helptext="write a worked example to files")
    sp.add_argument("name", choices=sorted(BUILDERS))
    sp.add_argument("--out", required=True)
    sp = add("check-paper", cmd_check_paper, surface=False, curve=False, helptext="run every acceptance check")
    sp.add_argument("--cases", type=int, default=1000, help="randomized cases for the property suites")
    sp.add_argument("--verbose", action="store_true")
    sp.add_argument("--json", help="also write the results here")
    return p


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        cfg = Config.load(args.config)
    except (OSError, ValueError, TypeError) as e:
        print(f"conecurve: bad configuration: {e}", file=sys.stderr)
        return 2
    try:
        obj, code = args.func(args, cfg)
    except UsageError as e:
        print(f"conecurve: {e}", file=sys.stderr)
        return 2
    except (ConeCurveError, KeyError, TypeError, ValueError) as e:
        # ConeCurveError covers geometric failures; the rest come from malformed input files
        sys.stdout.write(report.dumps({"error": type(e).__name__, "message": str(e)}, cfg.tolerance))
        return 1
    if obj is not None:
        sys.stdout.write(report.dumps(obj, cfg.tolerance))
    return code


if __name__ == "__main__":
    sys.exit(main())

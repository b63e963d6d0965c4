"""Command-line surface: generators, checkers, and solvers as reproducible
experiments with JSON reports, CSV summaries, and SVG figures.

Exit codes: 0 success, 2 validation failure, 3 theorem-gate failure
(inapplicable hypothesis), 4 search budget exceeded.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
import time
from pathlib import Path
from typing import Any, Sequence

from . import __version__
from .constructions import (
    WindowSpec,
    gen_brick_cover,
    gen_chess_families,
    gen_comb_cover,
    gen_comb_set,
    gen_epsilon_net,
    gen_interval_cover,
    gen_lattice_window,
    merge_point_sets,
)
from .correspondence import DEFAULT_NODE_BUDGET, exact_gh
from .covers import (
    check_cover,
    check_r_disjoint,
    check_uniform_bound,
    gh_lower_bound,
    make_certificate,
    model_space,
    multiplicity,
)
from .errors import (
    GhBoundsError,
    NonEuclideanAmbient,
    TooManyFamilies,
    TrivialStabilizer,
)
from .metric import EuclideanPointSet, as_subset, directed_hausdorff, hausdorff, scale_points
from .serialize import (
    certificate_report_json,
    cover_from_json,
    cover_to_json,
    dump_json,
    gh_result_to_json,
    load_json,
    model_from_json,
    space_from_json,
    space_to_json,
    subset_from_json,
)
from .svgfig import render_families_svg

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_GATE = 3
EXIT_BUDGET = 4

SQRT2 = math.sqrt(2.0)


def _say(msg: str) -> None:
    print(msg, file=sys.stderr)


def _emit(obj: Any, out: str | None) -> None:
    if out:
        dump_json(obj, out)
        _say(f"wrote {out}")
    else:
        print(json.dumps(obj, indent=2))


def _report(command: str, inputs: dict[str, Any], outputs: dict[str, Any],
            t0: float) -> dict[str, Any]:
    return {
        "command": command,
        "inputs": inputs,
        "outputs": outputs,
        "runtime_ms": round((time.perf_counter() - t0) * 1000.0, 3),
        "version": __version__,
    }


def _load_euclidean(path: str) -> EuclideanPointSet:
    space = space_from_json(load_json(path))
    if not isinstance(space, EuclideanPointSet):
        raise NonEuclideanAmbient(f"{path} must hold a points2d space")
    return space


# ---------------------------------------------------------------------------
# gen


def cmd_gen(args: argparse.Namespace) -> int:
    w = WindowSpec.parse(args.window)
    kind = args.kind
    if kind == "lattice":
        pts = gen_lattice_window(w)
        obj: dict[str, Any] = space_to_json(pts)
        _say(f"lattice: {pts.n} points")
    elif kind == "net":
        pts = gen_epsilon_net(w, args.eps)
        obj = space_to_json(pts)
        _say(f"net: {pts.n} points at spacing {args.eps}")
    elif kind == "chess":
        pts = gen_lattice_window(w)
        red, blue = gen_chess_families(pts)
        obj = cover_to_json(pts, (red, blue), r=SQRT2, strict=False, c=0.0)
        _say(f"chess: {pts.n} points, {len(red)} red + {len(blue)} blue singletons, "
             f"advertised r={SQRT2!r} (sqrt 2), C=0")
    elif kind == "comb":
        pts = gen_comb_set(w, args.delta)
        obj = space_to_json(pts)
        _say(f"comb: {pts.n} points at spacing {args.delta}")
    elif kind == "comb-cover":
        pts = gen_comb_set(w, args.delta)
        red, blue = gen_comb_cover(pts, args.height)
        obj = cover_to_json(pts, (red, blue), r=1.0, strict=False, c=float(args.height))
        _say(f"comb-cover: {pts.n} points, {len(red)} red + {len(blue)} blue pieces, "
             f"advertised r=1, C={args.height}")
    elif kind == "brick":
        if args.r is None:
            raise ValueError("gen brick requires --r")
        net, fams = gen_brick_cover(w, args.r, args.tile, args.spacing)
        tile = args.tile if args.tile is not None else 3.0 * args.r
        obj = cover_to_json(net, fams, r=args.r, strict=False, c=tile * SQRT2)
        _say(f"brick: {net.n} points, {'+'.join(str(len(f)) for f in fams)} bricks in 3 families, "
             f"advertised r={args.r}, C={tile * SQRT2!r}")
    elif kind == "interval":
        if args.r is None:
            raise ValueError("gen interval requires --r")
        net, fams = gen_interval_cover(w, args.r, args.tile, args.spacing)
        tile = args.tile if args.tile is not None else 3.0 * args.r
        obj = cover_to_json(net, fams, r=args.r, strict=False, c=tile)
        _say(f"interval: {net.n} points, {'+'.join(str(len(f)) for f in fams)} intervals "
             f"in 2 families, advertised r={args.r}, C={tile}")
    else:  # pragma: no cover - argparse choices forbid this
        raise ValueError(f"unknown generator {kind!r}")
    _emit(obj, args.out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# distances


def cmd_hausdorff(args: argparse.Namespace) -> int:
    t0 = time.perf_counter()
    if args.space_a or args.space_b:
        if not (args.space_a and args.space_b):
            raise ValueError("--space-a and --space-b must be given together")
        pa, pb = _load_euclidean(args.space_a), _load_euclidean(args.space_b)
        ambient, sa, sb = merge_point_sets(pa, pb)
        inputs: dict[str, Any] = {"space_a": args.space_a, "space_b": args.space_b,
                                  "merged": True}
    else:
        if not args.space:
            raise ValueError("give either --space or both --space-a/--space-b")
        ambient = space_from_json(load_json(args.space))
        sa = (subset_from_json(load_json(args.a), ambient.n)
              if args.a else as_subset(range(ambient.n)))
        sb = (subset_from_json(load_json(args.b), ambient.n)
              if args.b else as_subset(range(ambient.n)))
        inputs = {"space": args.space, "a": args.a, "b": args.b, "merged": False}
    d_ab = directed_hausdorff(ambient, sa, sb)
    d_ba = directed_hausdorff(ambient, sb, sa)
    value = max(d_ab, d_ba)
    outputs = {
        "hausdorff": value,
        "directed_ab": d_ab,
        "directed_ba": d_ba,
        "n_ambient": ambient.n,
        "n_a": len(sa),
        "n_b": len(sb),
    }
    _say(f"d_H = {value!r} (directed {d_ab!r} / {d_ba!r})")
    _emit(_report("hausdorff", inputs, outputs, t0), args.out)
    return EXIT_OK


def cmd_gh_exact(args: argparse.Namespace) -> int:
    t0 = time.perf_counter()
    x = space_from_json(load_json(args.x))
    y = space_from_json(load_json(args.y))
    res = exact_gh(x, y, budget=args.budget)
    outputs = gh_result_to_json(res)
    _say(f"d_GH = {res.value!r} (dis {res.dis!r}, {res.nodes} nodes, "
         f"{'optimal' if res.optimal else 'budget exceeded: upper bound only'})")
    _emit(_report("gh-exact", {"x": args.x, "y": args.y, "budget": args.budget},
                  outputs, t0), args.out)
    return EXIT_OK if res.optimal else EXIT_BUDGET


# ---------------------------------------------------------------------------
# certificates and bounds


def _load_model(args: argparse.Namespace):
    if getattr(args, "model_file", None):
        return model_from_json(load_json(args.model_file))
    return model_space(args.model)


def cmd_lower_bound(args: argparse.Namespace) -> int:
    t0 = time.perf_counter()
    space, families, r_file, strict_file, target = cover_from_json(load_json(args.cover))
    r = args.r if args.r is not None else r_file
    strict = bool(args.strict or strict_file)
    cert = make_certificate(space, families, r, strict, target)
    model = _load_model(args)
    bound = gh_lower_bound(cert, model)
    outputs = certificate_report_json(cert, model, bound)
    for line in bound.trace:
        _say(f"trace: {line}")
    _say(f"lower bound: d_GH >= {bound.bound!r} against {model.name}")
    _emit(_report("lower-bound", {"cover": args.cover, "model": model.name,
                                  "r": r, "strict": strict}, outputs, t0), args.out)
    return EXIT_OK


def cmd_verify_cover(args: argparse.Namespace) -> int:
    t0 = time.perf_counter()
    space, families, r_file, strict_file, target = cover_from_json(load_json(args.cover))
    r = args.r if args.r is not None else r_file
    strict = bool(args.strict or strict_file)
    tgt = target if target is not None else as_subset(range(space.n))
    fam_reports = []
    all_ok = True
    for fam in families:
        rep = check_r_disjoint(space, fam, r, strict)
        fam_reports.append({
            "label": fam.label,
            "members": len(fam.members),
            "min_gap": None if math.isinf(rep.min_gap) else rep.min_gap,
            "witness": list(rep.witness) if rep.witness else None,
            "max_diam": check_uniform_bound(space, fam),
            "disjoint_ok": rep.ok,
        })
        all_ok = all_ok and rep.ok
    cov = check_cover(space, families, tgt)
    mult = multiplicity(space, families, tgt)
    all_ok = all_ok and cov.ok
    outputs = {
        "k": len(families),
        "r": r,
        "strictness": "strict" if strict else "non-strict",
        "C": max(f["max_diam"] for f in fam_reports),
        "families": fam_reports,
        "cover_ok": cov.ok,
        "uncovered": list(cov.uncovered[:20]),
        "multiplicity": mult,
        "ok": all_ok,
    }
    _say(f"verify-cover: {'OK' if all_ok else 'FAILED'} "
         f"(k={len(families)}, r={r!r}, C={outputs['C']!r}, multiplicity={mult})")
    _emit(_report("verify-cover", {"cover": args.cover, "r": r, "strict": strict},
                  outputs, t0), args.out)
    return EXIT_OK if all_ok else EXIT_VALIDATION


# ---------------------------------------------------------------------------
# reproductions


def _write_csv(path: str, header: Sequence[str], rows: Sequence[Sequence[Any]]) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows(rows)
    _say(f"wrote {path}")


def cmd_reproduce(args: argparse.Namespace) -> int:
    t0 = time.perf_counter()
    n = args.window
    if n < 4:
        raise ValueError("--window must be at least 4")
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    if args.example == "example1":
        w = WindowSpec(0.0, float(n), 0.0, float(n))
        lattice = gen_lattice_window(w)
        net = gen_epsilon_net(w, args.eps)
        families = gen_chess_families(lattice)
        cert = make_certificate(lattice, families, SQRT2, strict=False)
        result = gh_lower_bound(cert, model_space("R2"))
        ambient, sub_l, sub_n = merge_point_sets(lattice, net)
        value = hausdorff(ambient, sub_l, sub_n)
        tolerance = 1e-9
        svg_path = render_families_svg(lattice.points, families,
                                       out_dir / "example1.svg", dot_radius=0.18,
                                       title="chess coloring of a lattice window")
        counts = {"lattice": lattice.n, "net": net.n}
        delta_used: float | None = None
    else:
        w = WindowSpec(0.0, float(n), -n / 2.0, n / 2.0)
        comb = gen_comb_set(w, args.delta)
        net = gen_epsilon_net(w, args.delta)
        families = gen_comb_cover(comb, args.height)
        cert = make_certificate(comb, families, 1.0, strict=False)
        result = gh_lower_bound(cert, model_space("R2"))
        ambient, sub_c, sub_n = merge_point_sets(comb, net)
        value = hausdorff(ambient, sub_c, sub_n)
        tolerance = args.delta + 2.0 / n
        svg_path = render_families_svg(comb.points, families,
                                       out_dir / "example2.svg", dot_radius=0.05,
                                       title="two-family cover of a comb window")
        counts = {"comb": comb.n, "net": net.n}
        delta_used = args.delta

    difference = abs(result.bound - value)
    outputs = {
        "bound": result.bound,
        "hausdorff": value,
        "difference": difference,
        "tolerance": tolerance,
        "agrees": difference <= tolerance,
        "certificate": certificate_report_json(cert),
        "trace": list(result.trace),
        "counts": counts,
        "svg": str(svg_path),
    }
    inputs = {"example": args.example, "window": n,
              "eps": args.eps if args.example == "example1" else None,
              "delta": delta_used, "out_dir": str(out_dir)}
    report = _report("reproduce", inputs, outputs, t0)
    report_path = out_dir / f"{args.example}-report.json"
    dump_json(report, report_path)
    _say(f"wrote {report_path}")
    if args.csv:
        _write_csv(args.csv, ["quantity", "value"],
                   [["bound", repr(result.bound)], ["hausdorff", repr(value)],
                    ["difference", repr(difference)], ["tolerance", repr(tolerance)]])
    _say(f"{args.example}: bound={result.bound!r} d_H={value!r} "
         f"|diff|={difference!r} (tolerance {tolerance!r})")
    _emit(report, args.out)
    if difference > tolerance:
        _say("stage equality-check failed: bound and Hausdorff value disagree")
        return EXIT_GATE
    return EXIT_OK


def cmd_scale_ladder(args: argparse.Namespace) -> int:
    t0 = time.perf_counter()
    if args.lam <= 1.0:
        raise ValueError("--lam must be > 1 (an expanding scale)")
    space, families, r_file, _strict, _target = cover_from_json(load_json(args.cover))
    if not isinstance(space, EuclideanPointSet):
        raise NonEuclideanAmbient("scale-ladder needs a points2d ambient space")

    def measure(pts: EuclideanPointSet) -> tuple[float, float]:
        gap = min(check_r_disjoint(pts, fam, 0.0).min_gap for fam in families)
        dia = max(check_uniform_bound(pts, fam) for fam in families)
        return gap, dia

    gap0, diam0 = measure(space)
    rows = []
    ok = True
    for m in range(args.steps + 1):
        lam_m = args.lam ** m
        gap_m, diam_m = measure(scale_points(space, lam_m) if m else space)
        gap_ok = (math.isinf(gap0) or
                  abs(gap_m - lam_m * gap0) <= 1e-9 * max(1.0, lam_m * gap0))
        diam_ok = (diam_m == 0.0 if diam0 == 0.0 else
                   abs(diam_m - lam_m * diam0) <= 1e-9 * lam_m * diam0)
        ok = ok and gap_ok and diam_ok
        rows.append({"m": m, "lambda_pow": lam_m, "gap": gap_m, "diam": diam_m,
                     "gap_ok": gap_ok, "diam_ok": diam_ok})
    outputs = {"lambda": args.lam, "steps": args.steps, "gap0": gap0,
               "diam0": diam0, "rows": rows, "ok": ok}
    if args.csv:
        _write_csv(args.csv, ["m", "lambda_pow", "gap", "diam"],
                   [[r["m"], repr(r["lambda_pow"]), repr(r["gap"]), repr(r["diam"])]
                    for r in rows])
    _say(f"scale-ladder: {'OK' if ok else 'RATIO MISMATCH'} over {args.steps} steps "
         f"at lambda={args.lam}")
    _emit(_report("scale-ladder", {"cover": args.cover, "lam": args.lam,
                                   "steps": args.steps}, outputs, t0), args.out)
    return EXIT_OK if ok else EXIT_GATE


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ghbounds",
        description="Hausdorff/Gromov-Hausdorff distances, cover certificates, "
                    "and certified GH lower bounds on finite windows.",
    )
    parser.add_argument("--version", action="version", version=f"ghbounds {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate point sets and covers")
    p.add_argument("kind", choices=["lattice", "net", "chess", "comb",
                                    "comb-cover", "brick", "interval"])
    p.add_argument("--window", required=True, help="xmin,xmax,ymin,ymax")
    p.add_argument("--eps", type=float, default=0.1, help="net spacing")
    p.add_argument("--delta", type=float, default=0.05, help="comb sample spacing")
    p.add_argument("--height", type=float, default=2.0,
                   help="comb cover piece height h (>= sqrt 3)")
    p.add_argument("--r", type=float, default=None, help="separation for brick/interval")
    p.add_argument("--tile", type=float, default=None, help="tile size L (default 3r)")
    p.add_argument("--spacing", type=float, default=None,
                   help="ambient net spacing (default r/4)")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("hausdorff", help="Hausdorff distance between subsets")
    p.add_argument("--space", default=None, help="ambient space JSON")
    p.add_argument("--a", default=None, help="subset JSON (defaults to all points)")
    p.add_argument("--b", default=None, help="subset JSON (defaults to all points)")
    p.add_argument("--space-a", dest="space_a", default=None,
                   help="points2d JSON; merged with --space-b into one ambient")
    p.add_argument("--space-b", dest="space_b", default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_hausdorff)

    p = sub.add_parser("gh-exact", help="exact Gromov-Hausdorff distance")
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)
    p.add_argument("--budget", type=int, default=DEFAULT_NODE_BUDGET)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_gh_exact)

    p = sub.add_parser("lower-bound", help="certified GH lower bound from a cover")
    p.add_argument("--cover", required=True)
    p.add_argument("--model", default="R2", help="model space name (R1, R2, ...)")
    p.add_argument("--model-file", dest="model_file", default=None,
                   help="JSON descriptor overriding --model")
    p.add_argument("--r", type=float, default=None, help="override the file's r")
    p.add_argument("--strict", action="store_true", help="require gaps strictly > r")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_lower_bound)

    p = sub.add_parser("verify-cover", help="run certificate checks and report")
    p.add_argument("--cover", required=True)
    p.add_argument("--r", type=float, default=None)
    p.add_argument("--strict", action="store_true")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_verify_cover)

    p = sub.add_parser("reproduce", help="run a bundled end-to-end experiment")
    p.add_argument("example", choices=["example1", "example2"])
    p.add_argument("--window", type=int, default=12, help="window size (>= 4)")
    p.add_argument("--eps", type=float, default=0.1, help="net spacing (example1)")
    p.add_argument("--delta", type=float, default=0.05,
                   help="comb/net spacing (example2)")
    p.add_argument("--height", type=float, default=2.0, help="comb piece height")
    p.add_argument("--out-dir", dest="out_dir", default=".")
    p.add_argument("--csv", default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_reproduce)

    p = sub.add_parser("scale-ladder", help="measure gap/diam across scales")
    p.add_argument("--cover", required=True)
    p.add_argument("--lam", type=float, default=2.0, help="scale factor (> 1)")
    p.add_argument("--steps", type=int, default=5)
    p.add_argument("--csv", default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_scale_ladder)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (TooManyFamilies, TrivialStabilizer) as exc:
        _say(f"theorem gate: {exc}")
        return EXIT_GATE
    except GhBoundsError as exc:
        _say(f"validation: {exc}")
        return EXIT_VALIDATION
    except (ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        _say(f"validation: {exc}")
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())

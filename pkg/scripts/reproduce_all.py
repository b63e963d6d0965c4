#!/usr/bin/env python3
"""Run both bundled window experiments end to end and collect the artifacts.

Reproduces the chess-coloring experiment (lattice vs fine net, emitted bound
sqrt(2)/2) and the comb experiment (axis-plus-vertical-lines set, emitted
bound 1/2), then runs the doubling ladder on both cover types. Reports,
figures, and CSVs land under results/ by default.
"""

from __future__ import annotations

import argparse
import json
from pathlib import Path

from ghbounds import cli


def run(args: list[str]) -> None:
    rc = cli.main(args)
    if rc != 0:
        raise SystemExit(f"`ghbounds {' '.join(args)}` exited with {rc}")


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__,
                                 formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--out-dir", default="results", help="artifact directory")
    ap.add_argument("--window", type=int, default=12, help="window size N (>= 4)")
    ap.add_argument("--eps", type=float, default=0.1, help="net spacing, chess experiment")
    ap.add_argument("--delta", type=float, default=0.05, help="sample spacing, comb experiment")
    args = ap.parse_args()

    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    n = args.window

    run(["reproduce", "example1", "--window", str(n), "--eps", str(args.eps),
         "--out-dir", str(out), "--csv", str(out / "example1.csv")])
    run(["reproduce", "example2", "--window", str(n), "--delta", str(args.delta),
         "--out-dir", str(out), "--csv", str(out / "example2.csv")])

    chess = out / "chess-cover.json"
    brick = out / "brick-cover.json"
    run(["gen", "chess", "--window", f"0,{n},0,{n}", "--out", str(chess)])
    run(["gen", "brick", "--window", "0,40,0,40", "--r", "2", "--out", str(brick)])
    for name, cover in (("chess", chess), ("brick", brick)):
        run(["scale-ladder", "--cover", str(cover), "--lam", "2", "--steps", "5",
             "--csv", str(out / f"ladder-{name}.csv"),
             "--out", str(out / f"ladder-{name}.json")])

    print()
    for name in ("example1", "example2"):
        o = json.loads((out / f"{name}-report.json").read_text())["outputs"]
        print(f"{name}: bound={o['bound']!r}  hausdorff={o['hausdorff']!r}  "
              f"difference={o['difference']:.3g} (tolerance {o['tolerance']:.3g})")
    print(f"artifacts in {out}/")


if __name__ == "__main__":
    main()

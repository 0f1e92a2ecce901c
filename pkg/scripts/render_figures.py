#!/usr/bin/env python3
"""Draw the rank-2 diagrams and the broken lines of the theta examples as SVG files.

usage: python3 scripts/render_figures.py [--out DIR] [--order K]
"""
import argparse
from pathlib import Path

from clusterscat.rootdata import RootData
from clusterscat.scat import complete_rank2
from clusterscat.svg import diagram_svg
from clusterscat.theta import enumerate_broken_lines

PANELS = [(0, 0), (-1, 1), (-2, 1), (-3, 1), (-2, 2), (-4, 1)]
THETA = [((-1, 3), (-3, 2)), ((-4, 1), (-2, 3)), ((-3, 1), (-2, 3))]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default="out/figures")
    ap.add_argument("--order", type=int, default=8)
    args = ap.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for a, b in PANELS:
        d = complete_rank2(RootData.rank2(a, b), args.order)
        path = out / f"diagram_a{a}_b{b}.svg"
        path.write_text(diagram_svg(d, title=f"a={a} b={b} order {args.order}"))
        print(path)
    for (a, b), lam in THETA:
        d = complete_rank2(RootData.rank2(a, b), args.order)
        lines = enumerate_broken_lines(d, lam)
        path = out / f"theta_a{a}_b{b}_l{lam[0]}_{lam[1]}.svg"
        path.write_text(diagram_svg(d, lines, title=f"a={a} b={b} lambda={lam}, {len(lines)} broken lines"))
        print(path)


if __name__ == "__main__":
    main()

"""Stability classes and Morse indices over the (beta, alpha) rectangle.

Writes stability.csv / morse.csv and their SVG renderings into an output
directory (default: ./out).

    python3 scripts/stability_map.py [outdir] [--steps N] [--jobs J]
"""
import argparse
import os

from maslov_lagrange.grid import GridSpec, run_grid
from maslov_lagrange.render import render_svg


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("outdir", nargs="?", default="out")
    ap.add_argument("--steps", type=int, default=21)
    ap.add_argument("--jobs", type=int, default=os.cpu_count() or 1)
    ns = ap.parse_args()
    os.makedirs(ns.outdir, exist_ok=True)
    spec = GridSpec(alpha_steps=ns.steps, beta_steps=ns.steps)
    for kind in ("stability", "morse"):
        csv_path = os.path.join(ns.outdir, f"{kind}.csv")
        n = run_grid(kind, spec, csv_path, jobs=ns.jobs)
        render_svg(csv_path, csv_path[:-4] + ".svg")
        print(f"{kind}: {n} cells -> {csv_path[:-4]}.svg")


if __name__ == "__main__":
    main()

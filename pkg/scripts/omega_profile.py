"""omega-index of the essential block along the unit circle at one (alpha, beta).

Compares the crossing count with the piecewise table and shows how the
index changes as omega = exp(i theta) moves from 1 to -1.

    python3 scripts/omega_profile.py --alpha 0.5 --beta 0.1
"""
import argparse
import cmath
import math

import numpy as np

from maslov_lagrange import (ModelParams, classify_stability, closed_morse, essential_path,
                             omega_index, omega_table_e3)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--alpha", type=float, default=0.5)
    ap.add_argument("--beta", type=float, default=0.1)
    ap.add_argument("--samples", type=int, default=25)
    ns = ap.parse_args()
    p = ModelParams(ns.alpha, ns.beta)
    print(f"alpha={p.alpha} beta={p.beta} class={classify_stability(p).value}")
    P = essential_path(p)
    for th in np.linspace(0.0, math.pi, ns.samples):
        got = omega_index(P, cmath.exp(1j * th)).index
        try:
            # theta = 0 is the Morse index itself
            table = omega_table_e3(p, float(th)) if th > 0 else closed_morse(p, "E3")
        except ValueError:
            table = "-"
        print(f"theta={th:8.5f}  engine={got:2d}  table={table}")


if __name__ == "__main__":
    main()

"""Index of the k-th iterate of the Kepler block against the closed form.

Prints one line per (alpha, k): the direct crossing count, the sum over
k-th roots of unity, and the closed form.

    python3 scripts/kepler_iterates.py [--kmax K] [--alphas N]
"""
import argparse

import numpy as np

from maslov_lagrange import bott_long_sum, iterate_closed_e2, iterate_path, kepler_path, omega_index


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--kmax", type=int, default=4)
    ap.add_argument("--alphas", type=int, default=8)
    ns = ap.parse_args()
    print(f"{'alpha':>7} {'k':>3} {'direct':>7} {'bott':>5} {'closed':>7}")
    bad = 0
    for a in np.linspace(0.05, 1.95, ns.alphas):
        P = kepler_path(float(a))
        for k in range(1, ns.kmax + 1):
            direct = omega_index(iterate_path(P, k), 1.0).index
            summed = bott_long_sum(P, k)
            closed = iterate_closed_e2(float(a), k)
            bad += len({direct, summed, closed}) > 1
            print(f"{a:7.3f} {k:3d} {direct:7d} {summed:5d} {closed:7d}")
    print(f"{bad} disagreements")


if __name__ == "__main__":
    main()

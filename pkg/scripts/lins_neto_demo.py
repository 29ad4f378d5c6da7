"""Build the first-order n-cycle system, locate its cycles and dump the displacement curve.

The CSV written to --curve holds (r, D(r)) for plotting; the summary goes to stdout.
"""

import argparse
import csv

import numpy as np

from lienard.numeric import displacement, lins_neto_construct, real_cycle_radii


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=2)
    ap.add_argument("--epsilon", type=float, default=0.005)
    ap.add_argument("--r-max", type=float, default=0.95)
    ap.add_argument("--grid", type=int, default=40)
    ap.add_argument("--curve")
    args = ap.parse_args()

    sys_ = lins_neto_construct(args.n, args.epsilon)
    print(f"lambda  = {list(sys_.lam)}")
    print(f"damping = {sys_.damping}")
    radii = real_cycle_radii(sys_, args.r_max, args.grid)
    targets = [j / (args.n + 1) for j in range(1, args.n + 1)]
    print(f"cycles  = {len(radii)}")
    for r in radii:
        nearest = min(targets, key=lambda t: abs(t - r))
        print(f"  r = {r:.9f}   first-order target {nearest:.9f}   offset {r - nearest:+.2e}")

    if args.curve:
        with open(args.curve, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["r", "displacement"])
            for r in np.linspace(args.r_max / args.grid, args.r_max, 4 * args.grid):
                w.writerow([r, displacement(sys_, r)])


if __name__ == "__main__":
    main()

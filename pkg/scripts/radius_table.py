"""Tabulate the convergence and zero-counting radii over a sweep of |lambda|.

Writes CSV to stdout (or --out): one row per (d, |lambda|) with the basic
radius, rho, the scaled radius and both Bernstein radii.
"""

import argparse
import csv
import sys

import numpy as np

from lienard.bounds import bernstein_radii, radius_basic, radius_scaled, rho_solve


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--degrees", default="2,4,6")
    ap.add_argument("--points", type=int, default=9)
    ap.add_argument("--max-abs", type=float, default=2.0)
    ap.add_argument("--out")
    args = ap.parse_args()

    fh = open(args.out, "w", newline="") if args.out else sys.stdout
    w = csv.writer(fh)
    w.writerow(["d", "abs_lambda", "radius_basic", "rho", "radius_scaled", "r_bernstein", "r_bernstein_scaled"])
    for d in (int(x) for x in args.degrees.split(",")):
        for L in np.linspace(0.0, args.max_abs, args.points):
            # spread |lambda| evenly over the coefficients
            lam = [L / d] * d
            rep = bernstein_radii(max(1, d // 2), lam)
            w.writerow([d, L, radius_basic(lam), rho_solve(lam), radius_scaled(lam), rep.r_bernstein, rep.r_bernstein_scaled])
    if args.out:
        fh.close()


if __name__ == "__main__":
    main()

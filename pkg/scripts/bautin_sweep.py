"""Certify the Bautin index for a range of degrees and report timings."""

import argparse
import time

from lienard.bautin import bautin_index, bautin_report
from lienard.bounds import a0_verify
from lienard.recurrence import compute_table


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--d-max", type=int, default=6)
    ap.add_argument("--extra", type=int, default=4, help="orders checked beyond 2n")
    args = ap.parse_args()

    print(f"{'d':>3} {'n':>3} {'K':>3} {'B':>3} {'ok':>5} {'A0':>5} {'terms':>7} {'secs':>7}")
    for d in range(1, args.d_max + 1):
        n = d // 2
        K = 2 * n + args.extra
        t0 = time.perf_counter()
        table = compute_table(d, K)
        cert = bautin_report(d, K, table)
        a0 = a0_verify(table)
        dt = time.perf_counter() - t0
        B = bautin_index(cert) if cert.ok and n else cert.B
        terms = sum(len(table.f(k)) for k in range(1, K + 1))
        print(f"{d:>3} {n:>3} {K:>3} {B:>3} {str(cert.ok):>5} {str(a0.ok):>5} {terms:>7} {dt:>7.2f}")


if __name__ == "__main__":
    main()

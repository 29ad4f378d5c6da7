"""Rewrite the golden coefficient tables under tests/data."""

import argparse
from pathlib import Path

from lienard.recurrence import compute_table, dump_table

DATA = Path(__file__).resolve().parent.parent / "tests" / "data"
CASES = [(4, 9)]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", type=Path, default=DATA)
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)
    for d, K in CASES:
        path = args.out / f"table_d{d}_K{K}.json"
        path.write_text(dump_table(compute_table(d, K)) + "\n")
        print(f"wrote {path}")


if __name__ == "__main__":
    main()

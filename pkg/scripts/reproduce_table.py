"""Check every cell of the results table and write the CSV summary."""

import argparse
import sys

from scvote.harness import reproduce_table, table_csv


def main() -> int:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--out", default="table.csv")
    p.add_argument("--sweep-seeds", type=int, default=200)
    args = p.parse_args()
    rows = reproduce_table(args.sweep_seeds)
    text = table_csv(rows)
    with open(args.out, "w") as fh:
        fh.write(text)
    sys.stdout.write(text)
    return 0 if all(r.passed for r in rows) else 1


if __name__ == "__main__":
    sys.exit(main())

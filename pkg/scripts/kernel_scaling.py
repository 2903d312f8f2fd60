"""Kernel size and per-stage timing across instance sizes; writes CSV.

    python scripts/kernel_scaling.py --sizes 50,100,200,500 --ks 1,2,3,4,5 --trials 3 -o kernels.csv
"""

from __future__ import annotations

import argparse
import sys
from collections import defaultdict

from minlob.bench import BenchConfig, rows_to_csv, run_bench


def summarise(rows) -> str:
    by_k = defaultdict(list)
    for row in rows:
        if row["kernel_n"] != "":
            by_k[row["k"]].append(row["kernel_n"])
    lines = ["k  reduced  max_kernel  bound"]
    for k in sorted({row["k"] for row in rows}):
        sizes = by_k.get(k, [])
        lines.append(f"{k:<2} {len(sizes):>8} {max(sizes, default=0):>11} {8 * k * k + 6 * k:>6}")
    return "\n".join(lines)


def main(argv=None) -> int:
    ints = lambda s: [int(x) for x in s.split(",") if x]  # noqa: E731
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=ints, default=[50, 100, 200, 500])
    ap.add_argument("--ks", type=ints, default=[1, 2, 3, 4, 5])
    ap.add_argument("--hubs", type=int, default=2)
    ap.add_argument("--arc-probability", type=float, default=0.02)
    ap.add_argument("--trials", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("-o", "--output", help="CSV path (default: stdout)")
    args = ap.parse_args(argv)

    config = BenchConfig(
        sizes=args.sizes, ks=args.ks, hubs=args.hubs, arc_probability=args.arc_probability,
        trials=args.trials, seed=args.seed, jobs=args.jobs,
    )
    rows = run_bench(config)
    text = rows_to_csv(rows)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    print(summarise(rows), file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())

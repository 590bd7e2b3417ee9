"""Run the default experiment suite and write the CSV table.

    python3 scripts/run_suite.py --out suite.csv [--workers 4] [--scale 0.1]
"""

import argparse
import sys
import time

from ergbounds.suite import SUITE_SEED, run_suite


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seed", type=int, default=SUITE_SEED)
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--scale", type=float, default=1.0, help="fraction of the full trial counts")
    ap.add_argument("--out", default="-")
    args = ap.parse_args()
    t0 = time.perf_counter()
    results, table = run_suite(args.seed, args.workers, args.scale)
    if args.out == "-":
        sys.stdout.write(table)
    else:
        with open(args.out, "w", newline="") as fh:
            fh.write(table)
    for r in results:
        for o in r.outcomes:
            print(f"{r.config.name:24s} {o.event.label:22s} {o.successes}/{o.trials} "
                  f"undecided={o.undecided} {o.verdict}", file=sys.stderr)
    print(f"elapsed {time.perf_counter() - t0:.1f}s", file=sys.stderr)


if __name__ == "__main__":
    main()

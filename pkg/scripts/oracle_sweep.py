"""Compare the tree formula for H0 with the permutation oracle on a box of ramification vectors."""

import argparse
import time

from hurwitz_cycles.classical import double_hurwitz_number
from hurwitz_cycles.oracle import oracle_count, oracle_count_unmarked
from hurwitz_cycles.verify import off_wall_vectors


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("-n", type=int, nargs="+", default=[3, 4, 5])
    ap.add_argument("--bound", type=int, default=4)
    ap.add_argument("--max-degree", type=int, default=6)
    ap.add_argument("--verbose", action="store_true")
    args = ap.parse_args()
    total = bad = 0
    t0 = time.perf_counter()
    for n in args.n:
        for x in off_wall_vectors(n, args.bound, args.max_degree):
            h, o = double_hurwitz_number(x), oracle_count(x)
            total += 1
            bad += h != o
            if args.verbose or h != o:
                print(f"{str(list(x.entries)):<24} tree {h:>6}  oracle {o:>6}  unmarked {oracle_count_unmarked(x)}")
    print(f"{total} vectors, {bad} mismatches, {time.perf_counter() - t0:.1f}s")
    return 1 if bad else 0


if __name__ == "__main__":
    raise SystemExit(main())

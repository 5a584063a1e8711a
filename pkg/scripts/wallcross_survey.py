"""Classical and tropical wall crossing across every wall for given n and k."""

import argparse
import time

from hurwitz_cycles.classical import wall_crossing_direct, wall_crossing_formula
from hurwitz_cycles.trees import straddling_pair
from hurwitz_cycles.verify import proper_walls
from hurwitz_cycles.wallcross import tropical_wall_crossing


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("-n", type=int, default=5)
    ap.add_argument("-k", type=int, default=1)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    print(f"{'wall':<14}{'classical':>10}{'tropical':>10}{'cells':>7}  binomial groups")
    failures = 0
    for w in proper_walls(args.n):
        t0 = time.perf_counter()
        plus, minus = straddling_pair(args.n, w.subset, args.seed)
        classical = wall_crossing_direct(w.subset, args.k, plus, minus).same_terms(
            wall_crossing_formula(w.subset, args.k, plus))
        rep = tropical_wall_crossing(w.subset, args.k, plus.sample, minus=minus.sample)
        groups = " ".join(f"j={j}:{g['subsets']}/{g['binomial']}" for j, g in sorted(rep.grouping.items()))
        failures += not (classical and rep.ok)
        print(f"{w.name:<14}{str(classical):>10}{str(rep.ok):>10}{len(rep.lhs):>7}  {groups}  "
              f"({time.perf_counter() - t0:.2f}s)")
    print(f"{failures} failures")
    return 1 if failures else 0


if __name__ == "__main__":
    raise SystemExit(main())

"""Build the Hurwitz curve in M_0,5 for one chamber, tabulate cells per cone, write a DOT file."""

import argparse
from collections import Counter, defaultdict

from hurwitz_cycles.serialize import tropical_dot
from hurwitz_cycles.tropical import TropicalHurwitzCycle, check_balancing, classify_cell_k1


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("-x", default="20,1,-6,-7,-8")
    ap.add_argument("--dot", default="m05_curve.dot")
    args = ap.parse_args()
    x = [int(v) for v in args.x.split(",")]
    curve = TropicalHurwitzCycle(x, 1)
    per_cone = defaultdict(Counter)
    for cell in curve.cells:
        per_cone[cell.tree][classify_cell_k1(cell)] += 1
    for tree, types in sorted(per_cone.items()):
        print(f"{str(tree):<22} " + ", ".join(f"{n} {t}" for t, n in sorted(types.items())))
    print(f"{len(curve.cells)} cells, {len(curve.faces(0))} vertices, balanced: {check_balancing(curve).ok}")
    with open(args.dot, "w") as fh:
        fh.write(tropical_dot(curve))
    print(f"wrote {args.dot}")


if __name__ == "__main__":
    main()

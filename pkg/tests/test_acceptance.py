"""Acceptance criteria 1-9, one test per criterion.

Each test records a PASS/FAIL line with its runtime; the lines are printed in the
pytest terminal summary and when the file is run as a script.
"""

import random
import time
from collections import Counter
from contextlib import contextmanager

import pytest

from hurwitz_cycles.classical import double_hurwitz_number, hurwitz_cycle, wall_crossing_direct, wall_crossing_formula
from hurwitz_cycles.fan import boundary_chain, psi_pullback_chain
from hurwitz_cycles.oracle import oracle_count
from hurwitz_cycles.trees import LabeledTree, chamber_of, enumerate_trees, straddling_pair
from hurwitz_cycles.tropical import (
    CONSTANT_END,
    LINEAR_EDGE,
    LINEAR_END,
    TropicalHurwitzCycle,
    check_balancing,
    classify_cell_k1,
    evaluation_weight,
    skeleton_expectation,
    skeleton_intersect,
)
from hurwitz_cycles.verify import off_wall_vectors, points_in_chamber, proper_walls, random_chamber
from hurwitz_cycles.wallcross import tropical_wall_crossing
from oracles import boundary_chain_oracle, cycle_at_point, pullback_chain_oracle

RESULTS = []
M05 = (20, 1, -6, -7, -8)
M05_MINUS = (16, 7, -6, -8, -9)


@contextmanager
def criterion(number, title, budget):
    start = time.perf_counter()
    ok, detail = False, ""
    try:
        box = {}
        yield box
        ok, detail = box.get("ok", False), box.get("detail", "")
    except AssertionError as exc:
        detail = str(exc).splitlines()[0] if str(exc) else "assertion failed"
        raise
    finally:
        elapsed = time.perf_counter() - start
        ok = ok and elapsed < budget
        line = f"{'PASS' if ok else 'FAIL'} criterion {number}: {title} [{detail}; {elapsed:.1f}s of {budget:.0f}s]"
        RESULTS.append(line)
        print(line)
    assert ok, line


def chambers(n, count, seed):
    rng = random.Random(seed)
    return [random_chamber(n, rng) for _ in range(count)]


def built_cycles():
    out = [TropicalHurwitzCycle(M05, 1), TropicalHurwitzCycle(M05, 2)]
    for n in (4, 5, 6):
        for ch in chambers(n, 6, 100 + n):
            for k in range(1, min(2, n - 3) + 1):
                out.append(TropicalHurwitzCycle(ch.sample, k))
    return out


@pytest.fixture(scope="module")
def cycles():
    return built_cycles()


def test_criterion_1_oracle_equivalence():
    with criterion(1, "oracle equivalence, n in {3,4,5}, |x_i| <= 4, degree <= 6", 300) as box:
        cases = bad = 0
        for n in (3, 4, 5):
            for x in off_wall_vectors(n, 4, 6):
                cases += 1
                bad += double_hurwitz_number(x) != oracle_count(x)
        box.update(ok=bad == 0 and cases > 100, detail=f"{cases} vectors, {bad} mismatches")


def test_criterion_2_polynomiality():
    with criterion(2, "homogeneous polynomial coefficients, pointwise agreement", 120) as box:
        rng = random.Random(2)
        checks = bad = 0
        for n in (5, 6):
            for ch in chambers(n, 4, 20 + n):
                pts = points_in_chamber(ch, 5, rng)
                for k in (0, 1, 2):
                    cyc = hurwitz_cycle(ch, k)
                    bad += not all(p.is_homogeneous(n - 3 - k) for p in cyc.terms.values())
                    for y in pts:
                        checks += 1
                        bad += cyc.evaluate(y.entries) != cycle_at_point(y.entries, k)
        box.update(ok=bad == 0, detail=f"{checks} point evaluations, {bad} failures")


def test_criterion_3_classical_wall_crossing():
    with criterion(3, "classical wall crossing, all walls n in {4,5,6}, k <= 2", 300) as box:
        runs = bad = 0
        for n in (4, 5, 6):
            for w in proper_walls(n):
                plus, minus = straddling_pair(n, w.subset, 3)
                for k in range(0, min(2, n - 3) + 1):
                    runs += 1
                    bad += not wall_crossing_direct(w.subset, k, plus, minus).same_terms(
                        wall_crossing_formula(w.subset, k, plus))
        plus, _ = straddling_pair(4, [1, 3], 0)
        closed = wall_crossing_formula([1, 3], 0, plus).cycle
        (tree, coeff), = closed.terms.items()
        closed_ok = tree == LabeledTree.from_splits(4, [[1, 3]]) and str(coeff) == "2*x1 + 2*x3"
        box.update(ok=bad == 0 and closed_ok, detail=f"{runs} wall/k pairs, {bad} failures, closed case {coeff}")


def test_criterion_4_intersection_lemmas():
    with criterion(4, "divisor and pullback chains against the lemma classes, j <= 3, N <= 7", 300) as box:
        runs = bad = 0
        for N in range(4, 8):
            for j in (2, 3):
                if j <= N - 3:
                    runs += 1
                    bad += boundary_chain(j, N).weights != boundary_chain_oracle(j, N)
            for j in (1, 2, 3):
                for alpha in sorted({j + 1, N}):
                    if j <= N - 3:
                        runs += 1
                        bad += psi_pullback_chain(alpha, j, N).weights != pullback_chain_oracle(alpha, j, N)
        box.update(ok=bad == 0, detail=f"{runs} chains, {bad} mismatches")


def test_criterion_5_m05_cells():
    with criterion(5, "Hurwitz curve cells over <v12,v34> and <v23,v45>, six-valent", 60) as box:
        curve = TropicalHurwitzCycle(M05, 1)

        def types(*splits):
            tree = LabeledTree.from_splits(5, splits)
            return Counter(classify_cell_k1(c) for c in curve.cells if c.tree == tree)

        a, b = types([1, 2], [3, 4]), types([2, 3], [4, 5])
        adjacency = Counter()
        for key in curve.top_weights():
            for facet, _ in curve.lattice.faces[key].facets:
                adjacency[facet] += 1
        valences = {adjacency[p.key] for p in curve.faces(0)}
        ok = a == {CONSTANT_END: 2, LINEAR_EDGE: 1} and b == {CONSTANT_END: 2, LINEAR_END: 2} and valences == {6}
        box.update(ok=ok, detail=f"{dict(a)} / {dict(b)} / valences {sorted(valences)}")


def test_criterion_6_weight_agreement(cycles):
    with criterion(6, "gcd-of-minors weights equal combinatorial weights, n <= 6, k <= 2", 600) as box:
        cells = bad = 0
        for cyc in cycles:
            for c in cyc.cells:
                cells += 1
                bad += c.weight != evaluation_weight(c.dt, c.moving)
        box.update(ok=bad == 0, detail=f"{len(cycles)} cycles, {cells} cells, {bad} disagreements")


def test_criterion_7_balancing(cycles):
    with criterion(7, "balancing at every codim-one face, mutation detected", 600) as box:
        faces = bad = undetected = 0
        rng = random.Random(7)
        for cyc in cycles:
            rep = check_balancing(cyc)
            faces += rep.faces_checked
            bad += not rep.ok
            weights = cyc.top_weights()
            key = rng.choice(sorted(weights, key=repr))
            undetected += check_balancing(cyc, {**weights, key: weights[key] + 1}).ok
        box.update(ok=bad == 0 and undetected == 0,
                   detail=f"{faces} faces, {bad} unbalanced cycles, {undetected} undetected mutations")


def test_criterion_8_skeleton(cycles):
    with criterion(8, "skeleton intersections: m(G) points of weight prod(val-2) phi(G)", 600) as box:
        cones = bad = 0
        for cyc in cycles:
            classical = hurwitz_cycle(chamber_of(cyc.x), cyc.k).evaluate(cyc.x.entries)
            for cone in enumerate_trees(cyc.n, cyc.n - 2 - cyc.k):
                cones += 1
                pts = skeleton_intersect(cyc, cone)
                count, weight = skeleton_expectation(cyc, cone)
                bad += len(pts) != count or any(w != weight for w in pts.values())
                bad += sum(pts.values()) != classical.get(cone, 0)
        box.update(ok=bad == 0, detail=f"{cones} cones, {bad} mismatches")


def test_criterion_9_tropical_wall_crossing():
    with criterion(9, "tropical wall crossing equals cut-glue-fold, all n=5 walls and n=6 walls, k=1", 600) as box:
        runs = bad = 0
        rep = tropical_wall_crossing([1, 4, 5], 1, M05, minus=M05_MINUS)
        fixture_ok = rep.ok
        cone = LabeledTree.from_splits(5, [[1, 4], [2, 3]])
        for c in rep.plus_cells:
            if c.tree == cone and c.moving == ((2, 3),):
                fixture_ok &= c.signature not in rep.lhs
            if c.tree == cone and c.moving == ((1, 4),):
                fixture_ok &= rep.lhs.get(c.signature) == 2 * 5
        plus_types = Counter(c.classification() for c in rep.plus_cells if c.tree == cone)
        minus_types = Counter(c.classification() for c in rep.minus_cells if c.tree == cone)
        fixture_ok &= plus_types[LINEAR_EDGE] == 1 and minus_types[LINEAR_END] == 2 and minus_types[LINEAR_EDGE] == 0
        for n in (5, 6):
            for w in proper_walls(n):
                plus, minus = straddling_pair(n, w.subset, 9)
                runs += 1
                bad += not tropical_wall_crossing(w.subset, 1, plus.sample, minus=minus.sample).ok
        box.update(ok=bad == 0 and fixture_ok, detail=f"{runs} walls, {bad} failures, fixture {'ok' if fixture_ok else 'broken'}")


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q", "-s"]))

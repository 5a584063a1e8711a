"""Named verification suites, used by the CLI and the scripts."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Callable, Dict, Iterator, List, Optional, Sequence

from .classical import double_hurwitz_number, hurwitz_cycle, wall_crossing_direct, wall_crossing_formula
from .errors import OnWallError
from .oracle import oracle_count
from .trees import (
    Chamber,
    RamificationVector,
    balance,
    chamber_of,
    count_orderings,
    enumerate_trees,
    straddling_pair,
    valence_factor,
    walls,
)
from .tropical import (
    TropicalHurwitzCycle,
    check_balancing,
    correspondence_report,
    evaluation_weight,
    skeleton_expectation,
    skeleton_intersect,
)
from .wallcross import tropical_wall_crossing


@dataclass(frozen=True)
class CheckResult:
    suite: str
    case: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'}  {self.suite:<22} {self.case}" + (f"  ({self.detail})" if self.detail else "")


# ---------------------------------------------------------------- sampling


def off_wall_vectors(n: int, bound: int, max_degree: Optional[int] = None) -> Iterator[RamificationVector]:
    """Every off-wall x with n entries, 0 < |x_i| <= bound, in lexicographic order."""
    values = [v for v in range(-bound, bound + 1) if v]
    for head in itertools.product(values, repeat=n - 1):
        last = -sum(head)
        if last == 0 or abs(last) > bound:
            continue
        x = RamificationVector.of(head + (last,))
        if max_degree is not None and x.degree > max_degree:
            continue
        try:
            chamber_of(x)
        except OnWallError:
            continue
        yield x


def random_chamber(n: int, rng: random.Random, bound: int = 9) -> Chamber:
    while True:
        vals = [rng.choice([v for v in range(-bound, bound + 1) if v]) for _ in range(n - 1)]
        last = -sum(vals)
        if last == 0:
            continue
        try:
            return chamber_of(vals + [last])
        except OnWallError:
            continue


def points_in_chamber(chamber: Chamber, count: int, rng: random.Random) -> List[RamificationVector]:
    """Lattice points 3x + δ with small δ that stay in the chamber of x."""
    x = chamber.sample.entries
    out = [chamber.sample]
    while len(out) < count:
        delta = [rng.randint(-1, 1) for _ in x[:-1]]
        delta.append(-sum(delta))
        y = [3 * a + b for a, b in zip(x, delta)]
        try:
            c = chamber_of(y)
        except OnWallError:
            continue
        if c.same_as(chamber) and RamificationVector.of(y) not in out:
            out.append(RamificationVector.of(y))
    return out


def pointwise_cycle(x: RamificationVector, k: int) -> Dict:
    """Coefficients of H_k computed at one point, without building polynomials."""
    out = {}
    for tree in enumerate_trees(x.n, x.n - 2 - k):
        dt = balance(tree, x)
        m = count_orderings(dt)
        if m:
            w = 1
            for e in dt.edges:
                w *= e.value
            out[tree] = m * valence_factor(tree) * w
    return out


def proper_walls(n: int):
    return [w for w in walls(n) if 2 <= len(w.subset) <= n - 2]


# ---------------------------------------------------------------- suites


def suite_oracle(n: int, seed: int = 0, bound: int = 4, max_degree: int = 6) -> List[CheckResult]:
    out = []
    for x in off_wall_vectors(n, bound, max_degree):
        h, o = double_hurwitz_number(x), oracle_count(x)
        out.append(CheckResult("oracle", str(list(x.entries)), h == o, f"{h} vs {o}"))
    return out


def suite_polynomiality(n: int, seed: int = 0, chambers: int = 3, points: int = 5) -> List[CheckResult]:
    rng = random.Random(seed)
    out = []
    for _ in range(chambers):
        ch = random_chamber(n, rng)
        for k in range(0, n - 2):
            cyc = hurwitz_cycle(ch, k)
            homog = all(p.is_homogeneous(n - 3 - k) for p in cyc.terms.values())
            agree = all(cyc.evaluate(list(y.entries)) == pointwise_cycle(y, k) for y in points_in_chamber(ch, points, rng))
            out.append(CheckResult("polynomiality", f"x={list(ch.sample.entries)} k={k}", homog and agree,
                                   "" if homog else "inhomogeneous coefficient"))
    return out


def suite_classical_wallcrossing(n: int, seed: int = 0) -> List[CheckResult]:
    out = []
    for w in proper_walls(n):
        plus, minus = straddling_pair(n, w.subset, seed)
        for k in range(0, n - 2):
            ok = wall_crossing_direct(w.subset, k, plus, minus).same_terms(wall_crossing_formula(w.subset, k, plus))
            out.append(CheckResult("classical-wallcrossing", f"{w.name} k={k}", ok))
    return out


def suite_wallcrossing(n: int, seed: int = 0, ks: Optional[Sequence[int]] = None) -> List[CheckResult]:
    out = []
    ks = ks if ks is not None else [1] if n >= 4 else [0]
    for w in proper_walls(n):
        plus, minus = straddling_pair(n, w.subset, seed)
        for k in ks:
            rep = tropical_wall_crossing(w.subset, k, plus.sample, minus=minus.sample)
            detail = f"{len(rep.lhs)} cells"
            if not rep.equal:
                detail = "LHS and RHS differ"
            elif not rep.binomial_ok:
                detail = "binomial grouping off"
            elif not rep.noncontributing_cancel:
                detail = "non-contributing cells do not cancel"
            out.append(CheckResult("wallcrossing", f"{w.name} k={k}", rep.ok, detail))
    return out


def _cycles(n: int, seed: int, chambers: int):
    rng = random.Random(seed)
    for _ in range(chambers):
        ch = random_chamber(n, rng)
        for k in range(1, min(2, n - 3) + 1):
            yield TropicalHurwitzCycle(ch.sample, k)


def suite_weights(n: int, seed: int = 0, chambers: int = 2) -> List[CheckResult]:
    out = []
    for cyc in _cycles(n, seed, chambers):
        bad = [c for c in cyc.cells if c.weight != evaluation_weight(c.dt, c.moving)]
        out.append(CheckResult("weights", f"x={list(cyc.x.entries)} k={cyc.k}", not bad, f"{len(cyc.cells)} cells"))
    return out


def suite_balancing(n: int, seed: int = 0, chambers: int = 2) -> List[CheckResult]:
    out = []
    for cyc in _cycles(n, seed, chambers):
        rep = check_balancing(cyc)
        out.append(CheckResult("balancing", f"x={list(cyc.x.entries)} k={cyc.k}", rep.ok, f"{rep.faces_checked} faces"))
    return out


def suite_skeleton(n: int, seed: int = 0, chambers: int = 2) -> List[CheckResult]:
    out = []
    for cyc in _cycles(n, seed, chambers):
        ok = True
        for cone in enumerate_trees(n, n - 2 - cyc.k):
            pts = skeleton_intersect(cyc, cone)
            count, weight = skeleton_expectation(cyc, cone)
            ok &= len(pts) == count and all(w == weight for w in pts.values())
        out.append(CheckResult("skeleton", f"x={list(cyc.x.entries)} k={cyc.k}", ok))
    return out


def suite_correspondence(n: int, seed: int = 0, chambers: int = 2) -> List[CheckResult]:
    out = []
    for cyc in _cycles(n, seed, chambers):
        rows = correspondence_report(cyc.x, cyc.k, cyc)
        ok = all(r.tropical == r.classical and r.incidences_ok for r in rows)
        out.append(CheckResult("correspondence", f"x={list(cyc.x.entries)} k={cyc.k}", ok,
                               " ".join(f"d{r.dim}:{r.tropical}" for r in rows)))
    return out


SUITES: Dict[str, Callable[..., List[CheckResult]]] = {
    "oracle": suite_oracle,
    "polynomiality": suite_polynomiality,
    "classical-wallcrossing": suite_classical_wallcrossing,
    "wallcrossing": suite_wallcrossing,
    "weights": suite_weights,
    "balancing": suite_balancing,
    "skeleton": suite_skeleton,
    "correspondence": suite_correspondence,
}


def run_suite(name: str, n: int, seed: int = 0) -> List[CheckResult]:
    if name == "all":
        return [r for s in SUITES.values() for r in s(n, seed=seed)]
    return SUITES[name](n, seed=seed)

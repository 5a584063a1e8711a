"""Classical Hurwitz cycles as polynomial combinations of boundary strata, and wall crossing."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import Dict, Iterable, Mapping, Optional, Sequence, Tuple

from .errors import InvalidInputError
from .polynomial import IntPolynomial, LinearForm
from .trees import (
    Chamber,
    LabeledTree,
    RamificationVector,
    balance,
    canonical_subset,
    chamber_of,
    check_adjacent,
    count_orderings,
    enumerate_trees,
    phi,
    valence_factor,
)


@dataclass(frozen=True)
class CycleClass:
    """Formal sum of strata Δ_Γ with polynomial coefficients; k is the stratum dimension."""

    n: int
    k: int
    terms: Mapping[LabeledTree, IntPolynomial] = field(default_factory=dict)

    def __post_init__(self) -> None:
        clean = {}
        for tree, coeff in self.terms.items():
            if tree.n != self.n or coeff.n != self.n:
                raise InvalidInputError("term does not live on the right number of ends")
            if len(tree.splits) != self.n - 3 - self.k:
                raise InvalidInputError(f"{tree} is not a stratum of dimension {self.k}")
            if not coeff.is_zero():
                clean[tree] = coeff
        object.__setattr__(self, "terms", dict(sorted(clean.items())))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CycleClass):
            return NotImplemented
        return (self.n, self.k, self.terms) == (other.n, other.k, other.terms)

    def __hash__(self) -> int:
        return hash((self.n, self.k, tuple(self.terms.items())))

    def __add__(self, other: "CycleClass") -> "CycleClass":
        self._check(other)
        out = dict(self.terms)
        for t, c in other.terms.items():
            out[t] = out[t] + c if t in out else c
        return CycleClass(self.n, self.k, out)

    def __neg__(self) -> "CycleClass":
        return CycleClass(self.n, self.k, {t: -c for t, c in self.terms.items()})

    def __sub__(self, other: "CycleClass") -> "CycleClass":
        return self + (-other)

    def scale(self, factor) -> "CycleClass":
        return CycleClass(self.n, self.k, {t: c * factor for t, c in self.terms.items()})

    def normalized(self) -> "CycleClass":
        """Coefficients reduced modulo x1 + ... + xn."""
        return CycleClass(self.n, self.k, {t: c.reduce_sum_zero() for t, c in self.terms.items()})

    def equivalent(self, other: "CycleClass") -> bool:
        return self.normalized() == other.normalized()

    def evaluate(self, x: Sequence[int]) -> Dict[LabeledTree, int]:
        return {t: c(list(x)) for t, c in self.terms.items()}

    def is_zero(self) -> bool:
        return not self.terms

    def _check(self, other: "CycleClass") -> None:
        if (self.n, self.k) != (other.n, other.k):
            raise InvalidInputError("classes of different shape")

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return "\n".join(f"({c}) * D[{t}]" for t, c in self.terms.items())


@dataclass(frozen=True)
class WallCrossingClass:
    wall: Tuple[int, ...]
    plus: RamificationVector
    minus: Optional[RamificationVector]
    cycle: CycleClass

    @property
    def terms(self) -> Mapping[LabeledTree, IntPolynomial]:
        return self.cycle.terms

    def same_terms(self, other: "WallCrossingClass") -> bool:
        return self.cycle.normalized() == other.cycle.normalized()


def _as_chamber(c) -> Chamber:
    return c if isinstance(c, Chamber) else chamber_of(c)


def hurwitz_cycle(chamber, k: int) -> CycleClass:
    chamber = _as_chamber(chamber)
    n = chamber.n
    if not 0 <= k <= n - 3:
        raise InvalidInputError(f"k must lie in 0..{n - 3}")
    terms = {}
    for tree in enumerate_trees(n, n - 2 - k):
        dt = balance(tree, chamber)
        m = count_orderings(dt)
        if m:
            terms[tree] = phi(dt) * (m * valence_factor(tree))
    return CycleClass(n, k, terms)


def double_hurwitz_number(x) -> int:
    x = x if isinstance(x, RamificationVector) else RamificationVector.of(x)
    chamber_of(x)
    total = 0
    for tree in enumerate_trees(x.n, x.n - 2):
        dt = balance(tree, x)
        total += count_orderings(dt) * phi(dt)(list(x.entries))
    return total


# ---------------------------------------------------------------- gluing


@dataclass(frozen=True)
class GlueSpec:
    """How two factor spaces map into the glued one.

    Factor ends 1..m map to original labels; each factor variable is replaced by a
    linear form in the original variables.  The last end of each factor is the
    gluing end.
    """

    n: int
    left_labels: Tuple[int, ...]
    right_labels: Tuple[int, ...]
    left_forms: Tuple[LinearForm, ...]
    right_forms: Tuple[LinearForm, ...]

    def __post_init__(self) -> None:
        labels = self.left_labels + self.right_labels
        if sorted(labels) != list(range(1, self.n + 1)):
            raise InvalidInputError("factor labels must partition 1..n")
        if len(self.left_forms) != len(self.left_labels) + 1 or len(self.right_forms) != len(self.right_labels) + 1:
            raise InvalidInputError("need one substitution per factor variable")

    @classmethod
    def for_wall(cls, n: int, subset: Iterable[int]) -> "GlueSpec":
        left = tuple(sorted(set(subset)))
        right = tuple(i for i in range(1, n + 1) if i not in left)
        eps = LinearForm.subset_sum(n, left)
        lf = tuple(LinearForm.subset_sum(n, [i]) for i in left) + (-eps,)
        rf = tuple(LinearForm.subset_sum(n, [i]) for i in right) + (eps,)
        return cls(n, left, right, lf, rf)


def graft(left: LabeledTree, right: LabeledTree, spec: GlueSpec) -> LabeledTree:
    # splits are stored avoiding the largest label, which is the gluing end of each factor
    splits = [[spec.left_labels[i - 1] for i in s] for s in left.splits]
    splits += [[spec.right_labels[i - 1] for i in s] for s in right.splits]
    splits.append(list(spec.left_labels))
    return LabeledTree.from_splits(spec.n, splits)


def boxtimes(a: CycleClass, b: CycleClass, spec: GlueSpec) -> CycleClass:
    if a.n != len(spec.left_labels) + 1 or b.n != len(spec.right_labels) + 1:
        raise InvalidInputError("factor arity does not match the gluing spec")
    terms: Dict[LabeledTree, IntPolynomial] = {}
    for ta, pa in a.terms.items():
        qa = pa.substitute(spec.left_forms)
        for tb, pb in b.terms.items():
            tree = graft(ta, tb, spec)
            coeff = qa * pb.substitute(spec.right_forms)
            terms[tree] = terms[tree] + coeff if tree in terms else coeff
    return CycleClass(spec.n, a.k + b.k, terms)


def wall_crossing_direct(subset: Iterable[int], k: int, plus, minus) -> WallCrossingClass:
    plus, minus = _as_chamber(plus), _as_chamber(minus)
    rep = check_adjacent(plus, minus, subset)
    diff = hurwitz_cycle(plus, k) - hurwitz_cycle(minus, k)
    return WallCrossingClass(rep, plus.sample, minus.sample, diff.normalized())


def factor_chambers(plus: Chamber, subset: Iterable[int]) -> Tuple[Chamber, Chamber]:
    """Chambers of (x_I, -ε) and (x_{I^c}, ε) determined by the sample of `plus`."""
    sub = sorted(set(subset))
    rest = [i for i in range(1, plus.n + 1) if i not in sub]
    x = plus.sample
    eps = x.subset_sum(sub)
    left = chamber_of([x.entries[i - 1] for i in sub] + [-eps])
    right = chamber_of([x.entries[i - 1] for i in rest] + [eps])
    return left, right


def wall_crossing_terms(subset: Iterable[int], k: int, plus) -> Dict[int, CycleClass]:
    """Summands of the wall-crossing formula indexed by j, before normalization."""
    plus = _as_chamber(plus)
    n = plus.n
    sub = sorted(set(subset))
    if plus.sample.subset_sum(sub) <= 0:
        raise InvalidInputError("the sum over I must be positive in the given chamber")
    r = n - 2
    r1, r2 = len(sub) - 1, n - len(sub) - 1
    lo, hi = max(0, 1 + k - r2), min(k, r1 - 1)
    out = {}
    if lo > hi:
        return out
    spec = GlueSpec.for_wall(n, sub)
    left, right = factor_chambers(plus, sub)
    eps = LinearForm.subset_sum(n, sub).to_poly()
    for j in range(lo, hi + 1):
        glued = boxtimes(hurwitz_cycle(left, j), hurwitz_cycle(right, k - j), spec)
        out[j] = glued.scale(eps * comb(r - k, len(sub) - 1 - j))
    return out


def wall_crossing_formula(subset: Iterable[int], k: int, plus) -> WallCrossingClass:
    plus = _as_chamber(plus)
    n = plus.n
    if not 0 <= k <= n - 3:
        raise InvalidInputError(f"k must lie in 0..{n - 3}")
    rep = canonical_subset(subset, n)
    total = CycleClass(n, k, {})
    for part in wall_crossing_terms(subset, k, plus).values():
        total = total + part
    return WallCrossingClass(rep, plus.sample, None, total.normalized())

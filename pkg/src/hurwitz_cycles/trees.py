"""Labeled trees as split systems, walls and chambers, balanced orientations.

A tree on ends 1..n is stored as the set of its internal-edge bipartitions.
Each bipartition is kept as the part avoiding the largest label n, so two
trees are equal exactly when they are isomorphic by a label-fixing map.

Rooting every tree at end n gives each internal vertex a canonical key: the
set of ends lying below it.  The vertex next to end n has key (1, ..., n-1);
the vertex at the lower end of the edge with split S has key S.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Tuple

from .errors import InvalidInputError, NonAdjacentChambersError, OnWallError
from .polynomial import IntPolynomial, LinearForm

Split = Tuple[int, ...]
VertexKey = Tuple[int, ...]


# ---------------------------------------------------------------- walls


def canonical_subset(subset: Iterable[int], n: int) -> Split:
    """Representative of {I, I^c}: the singleton if either side is one, else the side avoiding n."""
    part = frozenset(subset)
    if not part or len(part) >= n or not part <= set(range(1, n + 1)):
        raise InvalidInputError(f"{sorted(part)} is not a proper nonempty subset of 1..{n}")
    comp = frozenset(range(1, n + 1)) - part
    if len(part) == 1:
        return tuple(part)
    if len(comp) == 1:
        return tuple(comp)
    return tuple(sorted(comp if n in part else part))


@dataclass(frozen=True, order=True)
class Wall:
    subset: Split
    n: int

    @classmethod
    def of(cls, subset: Iterable[int], n: int) -> "Wall":
        return cls(canonical_subset(subset, n), n)

    def form(self) -> LinearForm:
        return LinearForm.subset_sum(self.n, self.subset)

    @property
    def name(self) -> str:
        return "W{" + ",".join(map(str, self.subset)) + "}"

    def __str__(self) -> str:
        return self.name


@lru_cache(maxsize=None)
def walls(n: int) -> Tuple[Wall, ...]:
    if n < 3:
        raise InvalidInputError("need at least 3 ends")
    out = [Wall((i,), n) for i in range(1, n + 1)]
    for size in range(2, n - 1):
        for sub in itertools.combinations(range(1, n), size):
            out.append(Wall(sub, n))
    return tuple(sorted(out, key=lambda w: (len(w.subset), w.subset)))


# ---------------------------------------------------------------- ramification data


@dataclass(frozen=True)
class RamificationVector:
    entries: Tuple[int, ...]

    def __post_init__(self) -> None:
        entries = tuple(int(v) for v in self.entries)
        object.__setattr__(self, "entries", entries)
        if len(entries) < 3:
            raise InvalidInputError(f"need n >= 3 entries, got {len(entries)}")
        if sum(entries) != 0:
            raise InvalidInputError(f"entries must sum to 0, got sum {sum(entries)}")
        for i, v in enumerate(entries, start=1):
            if v == 0:
                raise OnWallError((i,))

    @classmethod
    def of(cls, values: Iterable[int]) -> "RamificationVector":
        return cls(tuple(values))

    @property
    def n(self) -> int:
        return len(self.entries)

    @property
    def r(self) -> int:
        return self.n - 2

    @property
    def degree(self) -> int:
        return sum(v for v in self.entries if v > 0)

    @property
    def positive_part(self) -> Tuple[int, ...]:
        return tuple(sorted((v for v in self.entries if v > 0), reverse=True))

    @property
    def negative_part(self) -> Tuple[int, ...]:
        return tuple(sorted((-v for v in self.entries if v < 0), reverse=True))

    def subset_sum(self, subset: Iterable[int]) -> int:
        return sum(self.entries[i - 1] for i in subset)

    def __getitem__(self, i: int) -> int:
        return self.entries[i]

    def __iter__(self):
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)


@dataclass(frozen=True)
class Chamber:
    """A chamber of polynomiality, stored as an off-wall sample plus its sign vector."""

    sample: RamificationVector
    signs: Dict[Split, int] = field(compare=False)

    @property
    def n(self) -> int:
        return self.sample.n

    def sign(self, subset: Iterable[int]) -> int:
        sub = tuple(sorted(set(subset)))
        rep = canonical_subset(sub, self.n)
        s = self.signs[rep]
        return s if set(rep) == set(sub) else -s

    def disagreements(self, other: "Chamber") -> List[Split]:
        if other.n != self.n:
            raise InvalidInputError("chambers live in different spaces")
        return [w for w in sorted(self.signs, key=lambda s: (len(s), s)) if self.signs[w] != other.signs[w]]

    def same_as(self, other: "Chamber") -> bool:
        return not self.disagreements(other)


def chamber_of(x) -> Chamber:
    x = x if isinstance(x, RamificationVector) else RamificationVector.of(x)
    signs = {}
    for wall in walls(x.n):
        value = x.subset_sum(wall.subset)
        if value == 0:
            raise OnWallError(wall.subset)
        signs[wall.subset] = 1 if value > 0 else -1
    return Chamber(x, signs)


def check_adjacent(plus: Chamber, minus: Chamber, subset: Iterable[int]) -> Split:
    """Validate that the two chambers differ exactly across W_I with Σ_I positive on `plus`."""
    sub = tuple(sorted(set(subset)))
    rep = canonical_subset(sub, plus.n)
    diff = plus.disagreements(minus)
    if diff != [rep]:
        raise NonAdjacentChambersError(diff)
    if plus.sign(sub) != 1:
        raise InvalidInputError(f"sum over {list(sub)} must be positive in the first chamber")
    return rep


def opposite_chamber(plus: Chamber, subset: Iterable[int]) -> Chamber:
    """Chamber across W_I from `plus`, found by walking from the sample to a facet point."""
    n = plus.n
    sub = set(subset)
    x = plus.sample.entries
    eps = plus.sample.subset_sum(sub)
    if eps <= 0:
        raise InvalidInputError("sum over I must be positive at the sample")
    rep = canonical_subset(sub, n)
    others = [w.subset for w in walls(n) if w.subset != rep]
    for a in sorted(sub):
        for b in sorted(set(range(1, n + 1)) - sub):
            step = [0] * n
            step[a - 1] -= 1
            step[b - 1] += 1
            z = [xi + eps * si for xi, si in zip(x, step)]
            if all(_sign(sum(z[i - 1] for i in w)) == plus.signs[w] for w in others):
                candidate = [2 * zi + si for zi, si in zip(z, step)]
                minus = chamber_of(candidate)
                check_adjacent(plus, minus, sub)
                return minus
    raise NonAdjacentChambersError([rep])


def straddling_pair(n: int, subset: Iterable[int], seed: int = 0, eps: int = 2, bound: int = 6) -> Tuple[Chamber, Chamber]:
    """Random adjacent chambers across W_I with Σ_I x = ±eps at the two samples."""
    sub = sorted(set(subset))
    comp = sorted(set(range(1, n + 1)) - set(sub))
    rep = canonical_subset(sub, n)
    others = [w.subset for w in walls(n) if w.subset != rep]
    rng = random.Random(seed)
    nu = [0] * n
    nu[sub[0] - 1] = 1
    nu[comp[0] - 1] = -1
    for _ in range(100000):
        y = [0] * n
        for part in (sub, comp):
            vals = [rng.choice([v for v in range(-bound, bound + 1) if v]) for _ in part[:-1]]
            vals.append(-sum(vals))
            for i, v in zip(part, vals):
                y[i - 1] = v
        if all(sum(y[i - 1] for i in w) != 0 for w in others):
            plus = chamber_of([(eps + 1) * a + eps * b for a, b in zip(y, nu)])
            minus = chamber_of([(eps + 1) * a - eps * b for a, b in zip(y, nu)])
            check_adjacent(plus, minus, sub)
            return plus, minus
    raise RuntimeError("no generic point found on the wall")


def _sign(v) -> int:
    return (v > 0) - (v < 0)


# ---------------------------------------------------------------- trees


@dataclass(frozen=True, order=True)
class LabeledTree:
    n: int
    splits: Tuple[Split, ...]

    @classmethod
    def from_splits(cls, n: int, splits: Iterable[Iterable[int]]) -> "LabeledTree":
        everything = frozenset(range(1, n + 1))
        canon = set()
        for s in splits:
            part = frozenset(s)
            if not part <= everything:
                raise InvalidInputError(f"split {sorted(part)} uses labels outside 1..{n}")
            if n in part:
                part = everything - part
            if len(part) < 2 or len(part) > n - 2:
                raise InvalidInputError(f"split {sorted(part)} does not define an internal edge")
            canon.add(tuple(sorted(part)))
        ordered = tuple(sorted(canon))
        for a, b in itertools.combinations(ordered, 2):
            if not compatible(a, b):
                raise InvalidInputError(f"splits {a} and {b} are incompatible")
        return cls(n, ordered)

    @classmethod
    def star(cls, n: int) -> "LabeledTree":
        return cls(n, ())

    # vertices -----------------------------------------------------------
    @property
    def root(self) -> VertexKey:
        return tuple(range(1, self.n))

    @cached_property
    def vertices(self) -> Tuple[VertexKey, ...]:
        return tuple(sorted((self.root,) + self.splits))

    @cached_property
    def _children(self) -> Dict[VertexKey, Tuple[Tuple[VertexKey, ...], Tuple[int, ...]]]:
        """Per vertex: (child split vertices, ends hanging directly below)."""
        out = {}
        sets = {s: frozenset(s) for s in self.splits}
        for v in self.vertices:
            vs = frozenset(v)
            below = [s for s in self.splits if sets[s] < vs]
            maximal = [s for s in below if not any(sets[s] < sets[t] for t in below)]
            covered = set().union(*(sets[s] for s in maximal)) if maximal else set()
            ends = tuple(sorted(vs - covered))
            out[v] = (tuple(sorted(maximal)), ends)
        return out

    @cached_property
    def parent(self) -> Dict[Split, VertexKey]:
        out = {}
        for v, (kids, _) in self._children.items():
            for s in kids:
                out[s] = v
        return out

    def end_vertex(self, i: int) -> VertexKey:
        if i == self.n:
            return self.root
        for v, (_, ends) in self._children.items():
            if i in ends:
                return v
        raise KeyError(i)

    def ends_at(self, v: VertexKey) -> Tuple[int, ...]:
        ends = self._children[v][1]
        return ends + (self.n,) if v == self.root else ends

    def edges_at(self, v: VertexKey) -> Tuple[Split, ...]:
        """Internal edges (by split) incident to v."""
        kids = self._children[v][0]
        return kids if v == self.root else kids + (v,)

    def edge_endpoints(self, s: Split) -> Tuple[VertexKey, VertexKey]:
        """(lower vertex, upper vertex) when rooted at end n."""
        return s, self.parent[s]

    def other_end(self, s: Split, v: VertexKey) -> VertexKey:
        lo, hi = self.edge_endpoints(s)
        return hi if v == lo else lo

    def valence(self, v: VertexKey) -> int:
        return len(self.edges_at(v)) + len(self.ends_at(v))

    def branches(self, v: VertexKey) -> Tuple[FrozenSet[int], ...]:
        """Partition of the ends by the components of the tree minus v."""
        kids, ends = self._children[v]
        out = [frozenset(s) for s in kids] + [frozenset([e]) for e in ends]
        if v == self.root:
            out.append(frozenset([self.n]))
        else:
            out.append(frozenset(range(1, self.n + 1)) - frozenset(v))
        return tuple(sorted(out, key=lambda b: sorted(b)))

    def side_of(self, s: Split, v: VertexKey) -> FrozenSet[int]:
        """Ends on the far side of edge s as seen from its endpoint v."""
        lo, hi = self.edge_endpoints(s)
        if v == hi:
            return frozenset(s)
        if v == lo:
            return frozenset(range(1, self.n + 1)) - frozenset(s)
        raise KeyError((s, v))

    def neighbors(self, v: VertexKey) -> Tuple[VertexKey, ...]:
        return tuple(self.other_end(s, v) for s in self.edges_at(v))

    # operations ---------------------------------------------------------
    def contract(self, s: Split) -> "LabeledTree":
        if s not in self.splits:
            raise KeyError(s)
        return LabeledTree(self.n, tuple(t for t in self.splits if t != s))

    def merged_vertex(self, s: Split) -> VertexKey:
        """Key of the vertex that survives contracting s."""
        return self.parent[s]

    def is_trivalent(self) -> bool:
        return len(self.splits) == self.n - 3

    def relabel(self, mapping: Dict[int, int], n: Optional[int] = None) -> "LabeledTree":
        """Image under an injective relabeling of the ends; n defaults to the current end count."""
        m = self.n if n is None else n
        full = frozenset(range(1, self.n + 1))
        new = []
        for s in self.splits:
            side = frozenset(s)
            new.append(frozenset(mapping[i] for i in side))
            if len(full - side) < 2:
                raise AssertionError("not an internal split")
        return LabeledTree.from_splits(m, new)

    def __str__(self) -> str:
        body = " ".join("{" + ",".join(map(str, s)) + "}" for s in self.splits)
        return f"T{self.n}[{body}]"


def compatible(a: Iterable[int], b: Iterable[int]) -> bool:
    """Two splits given by one side each (both avoiding the same label) are compatible."""
    sa, sb = set(a), set(b)
    return sa <= sb or sb <= sa or not (sa & sb)


def _insert_leaf(tree: LabeledTree) -> Iterator[Tuple[LabeledTree, bool]]:
    """Trees on n+1 ends obtained by attaching end n+1; flag says a vertex was created."""
    n = tree.n
    new = n + 1
    everything = frozenset(range(1, n + 1))
    pairs = [(frozenset(s), everything - frozenset(s)) for s in tree.splits]

    def grow(side_with_new: Dict[int, int]) -> List[FrozenSet[int]]:
        out = []
        for idx, (a, b) in enumerate(pairs):
            out.append(a | {new} if side_with_new[idx] == 0 else a)
        return out

    # at an existing vertex
    for v in tree.vertices:
        branches = tree.branches(v)
        choice = {}
        for idx, (a, b) in enumerate(pairs):
            if any(a <= br for br in branches):
                choice[idx] = 1
            else:
                choice[idx] = 0
        yield LabeledTree.from_splits(new, grow(choice)), False
    # subdividing an internal edge
    for idx0, (a0, b0) in enumerate(pairs):
        choice = {}
        for idx, (a, b) in enumerate(pairs):
            if idx == idx0:
                continue
            # the new vertex sits on edge idx0; it lies on the side of (a|b) containing a0 or b0
            choice[idx] = 0 if (a0 <= a or b0 <= a) else 1
        splits = [a | {new} if choice[i] == 0 else a for i, (a, _) in enumerate(pairs) if i != idx0]
        splits += [a0, a0 | {new}]
        yield LabeledTree.from_splits(new, splits), True
    # subdividing an end
    for i in range(1, n + 1):
        splits = [a | {new} if i in a else a for a, _ in pairs]
        splits.append(frozenset([i, new]))
        yield LabeledTree.from_splits(new, splits), True


@lru_cache(maxsize=None)
def enumerate_trees(n: int, v: int) -> Tuple[LabeledTree, ...]:
    """All trees with n labeled ends, v internal vertices, every valence >= 3."""
    if n < 3 or v < 1 or v > n - 2:
        raise InvalidInputError(f"no trees with n={n} ends and v={v} internal vertices")
    if n == 3:
        return (LabeledTree.star(3),)
    found = set()
    for prev_v, grows in ((v, False), (v - 1, True)):
        if 1 <= prev_v <= n - 3:
            for t in enumerate_trees(n - 1, prev_v):
                for child, created in _insert_leaf(t):
                    if created == grows:
                        found.add(child)
    return tuple(sorted(found))


def all_trees(n: int) -> Tuple[LabeledTree, ...]:
    return tuple(t for v in range(1, n - 1) for t in enumerate_trees(n, v))


# ---------------------------------------------------------------- balanced orientation


@dataclass(frozen=True)
class DirectedEdge:
    split: Split
    tail: VertexKey
    head: VertexKey
    weight: LinearForm
    value: int


@dataclass(frozen=True)
class DirectedTree:
    """A tree with the unique balanced orientation and weights for a given sample."""

    tree: LabeledTree
    sample: RamificationVector
    edges: Tuple[DirectedEdge, ...]

    @cached_property
    def by_split(self) -> Dict[Split, DirectedEdge]:
        return {e.split: e for e in self.edges}

    @property
    def vertices(self) -> Tuple[VertexKey, ...]:
        return self.tree.vertices

    def weight(self, s: Split) -> int:
        return self.by_split[s].value

    @cached_property
    def successors(self) -> Dict[VertexKey, Tuple[VertexKey, ...]]:
        out: Dict[VertexKey, List[VertexKey]] = {v: [] for v in self.vertices}
        for e in self.edges:
            out[e.tail].append(e.head)
        return {v: tuple(sorted(w)) for v, w in out.items()}

    @cached_property
    def below(self) -> Dict[VertexKey, FrozenSet[VertexKey]]:
        """Strict upward closure: below[v] is the set of vertices w with v < w."""
        memo: Dict[VertexKey, FrozenSet[VertexKey]] = {}

        def up(v):
            if v not in memo:
                acc = set()
                for w in self.successors[v]:
                    acc.add(w)
                    acc |= up(w)
                memo[v] = frozenset(acc)
            return memo[v]

        return {v: up(v) for v in self.vertices}

    def precedes(self, a: VertexKey, b: VertexKey) -> bool:
        return b in self.below[a]

    def is_balanced(self) -> bool:
        """Inflow minus outflow at every vertex vanishes on the lattice Σx = 0."""
        n = self.tree.n
        ones = LinearForm((1,) * n)
        for v in self.vertices:
            total = LinearForm((0,) * n)
            for i in self.tree.ends_at(v):
                total = total + LinearForm.subset_sum(n, [i])
            for s in self.tree.edges_at(v):
                e = self.by_split[s]
                total = total + e.weight if e.head == v else total - e.weight
            c = total.coeffs[0]
            if total != LinearForm(tuple(c * a for a in ones.coeffs)):
                return False
        return all(e.value > 0 for e in self.edges)


def balance(tree: LabeledTree, chamber) -> DirectedTree:
    x = _sample_of(chamber)
    if x.n != tree.n:
        raise InvalidInputError("tree and ramification vector have different numbers of ends")
    edges = []
    for s in tree.splits:
        value = x.subset_sum(s)
        if value == 0:
            raise OnWallError(canonical_subset(s, tree.n))
        lo, hi = tree.edge_endpoints(s)
        # write the weight as the sum over whichever side is positive
        if value > 0:
            edges.append(DirectedEdge(s, lo, hi, LinearForm.subset_sum(tree.n, s), value))
        else:
            rest = set(range(1, tree.n + 1)) - set(s)
            edges.append(DirectedEdge(s, hi, lo, LinearForm.subset_sum(tree.n, rest), -value))
    return DirectedTree(tree, x, tuple(edges))


def _sample_of(chamber) -> RamificationVector:
    if isinstance(chamber, Chamber):
        return chamber.sample
    if isinstance(chamber, RamificationVector):
        return chamber
    return RamificationVector.of(chamber)


def restricted_order(dt: DirectedTree, moving: Iterable[VertexKey] = ()) -> Tuple[List[VertexKey], Dict[VertexKey, FrozenSet[VertexKey]]]:
    moving = set(moving)
    unknown = moving - set(dt.vertices)
    if unknown:
        raise InvalidInputError(f"unknown vertices {sorted(unknown)}")
    keep = [v for v in dt.vertices if v not in moving]
    return keep, {v: dt.below[v] & frozenset(keep) for v in keep}


def count_orderings(dt: DirectedTree, moving: Iterable[VertexKey] = ()) -> int:
    """Linear extensions of the orientation order restricted to non-moving vertices."""
    keep, above = restricted_order(dt, moving)
    index = {v: i for i, v in enumerate(keep)}
    preds = [0] * len(keep)
    for v in keep:
        for w in above[v]:
            preds[index[w]] |= 1 << index[v]
    full = (1 << len(keep)) - 1

    @lru_cache(maxsize=None)
    def count(placed: int) -> int:
        if placed == full:
            return 1
        total = 0
        for i in range(len(keep)):
            bit = 1 << i
            if not placed & bit and preds[i] & placed == preds[i]:
                total += count(placed | bit)
        return total

    return count(0)


def linear_extensions(dt: DirectedTree, moving: Iterable[VertexKey] = ()) -> Iterator[Tuple[VertexKey, ...]]:
    keep, above = restricted_order(dt, moving)
    preds = {v: {u for u in keep if v in above[u]} for v in keep}

    def extend(prefix, remaining):
        if not remaining:
            yield tuple(prefix)
            return
        placed = set(prefix)
        for v in sorted(remaining):
            if preds[v] <= placed:
                prefix.append(v)
                yield from extend(prefix, remaining - {v})
                prefix.pop()

    yield from extend([], set(keep))


def phi(dt: DirectedTree) -> IntPolynomial:
    """Product of the internal edge weights."""
    out = IntPolynomial.constant(dt.tree.n, 1)
    for e in dt.edges:
        out = out * e.weight.to_poly()
    return out


def valence_factor(tree: LabeledTree) -> int:
    out = 1
    for v in tree.vertices:
        out *= tree.valence(v) - 2
    return out

"""The distance-map embedding of tropical M_{0,N} and the split-length coordinates of a cone."""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence, Tuple

from .errors import InvalidInputError
from .trees import LabeledTree, Split

AmbientVector = Tuple[Fraction, ...]


class AmbientSpace:
    """R^{C(N,2)} modulo the leaf-shift vectors, in a fixed reduced representative.

    A vector d is reduced by subtracting the shift combination that zeroes the
    pivot pairs (1,k) for k >= 2 and (2,3); the representative is unique, so
    vectors compare by plain equality.
    """

    def __init__(self, N: int):
        if N < 3:
            raise InvalidInputError("need N >= 3")
        self.N = N
        self.pairs = tuple(itertools.combinations(range(1, N + 1), 2))
        self.index = {p: i for i, p in enumerate(self.pairs)}
        self.pivots = tuple((1, k) for k in range(2, N + 1)) + ((2, 3),)
        self.free_pairs = tuple(p for p in self.pairs if p not in set(self.pivots))

    @property
    def dimension(self) -> int:
        return len(self.free_pairs)

    def d(self, vec: Sequence, i: int, j: int):
        if i == j:
            return 0
        return vec[self.index[(i, j) if i < j else (j, i)]]

    def reduce(self, vec: Sequence) -> AmbientVector:
        N = self.N
        a = [Fraction(0)] * (N + 1)
        a[1] = Fraction(self.d(vec, 1, 2) + self.d(vec, 1, 3) - self.d(vec, 2, 3), 2)
        for k in range(2, N + 1):
            a[k] = self.d(vec, 1, k) - a[1]
        return tuple(Fraction(vec[t]) - a[i] - a[j] for t, (i, j) in enumerate(self.pairs))

    def zero(self) -> AmbientVector:
        return (Fraction(0),) * len(self.pairs)

    def ray(self, split: Iterable[int]) -> AmbientVector:
        return _ray(self.N, frozenset(split))

    def combine(self, terms: Iterable[Tuple[Fraction, AmbientVector]]) -> AmbientVector:
        out = [Fraction(0)] * len(self.pairs)
        for c, v in terms:
            if c:
                for t, val in enumerate(v):
                    if val:
                        out[t] += c * val
        return tuple(out)

    def from_tree(self, tree: LabeledTree, coeffs: Sequence) -> AmbientVector:
        if len(coeffs) != len(tree.splits):
            raise InvalidInputError("one coefficient per split expected")
        return self.combine((Fraction(c), self.ray(s)) for c, s in zip(coeffs, tree.splits))

    def reduced_coordinates(self, vec: AmbientVector) -> Tuple[Fraction, ...]:
        return tuple(vec[self.index[p]] for p in self.free_pairs)

    def split_length(self, vec: Sequence, tree: LabeledTree, split: Split):
        """Four-point functional returning the coefficient of v_split for vectors in the cone's span."""
        i, j, k, l = four_points(tree, split)
        return Fraction(self.d(vec, i, k) + self.d(vec, j, l) - self.d(vec, i, j) - self.d(vec, k, l), 2)

    def split_coordinates(self, vec: Sequence, tree: LabeledTree) -> Tuple[Fraction, ...]:
        return tuple(self.split_length(vec, tree, s) for s in tree.splits)

    def in_cone_span(self, vec: AmbientVector, tree: LabeledTree) -> bool:
        coords = self.split_coordinates(vec, tree)
        return self.from_tree(tree, coords) == tuple(vec)


@lru_cache(maxsize=None)
def _ray(N: int, split: frozenset) -> AmbientVector:
    space = _space(N)
    raw = [1 if (i in split) != (j in split) else 0 for i, j in space.pairs]
    return space.reduce(raw)


@lru_cache(maxsize=None)
def _space(N: int) -> AmbientSpace:
    return AmbientSpace(N)


def ambient(N: int) -> AmbientSpace:
    return _space(N)


@lru_cache(maxsize=None)
def four_points(tree: LabeledTree, split: Split) -> Tuple[int, int, int, int]:
    """Ends i, j below the edge and k, l above it, separated at the two endpoints."""
    lo, hi = tree.edge_endpoints(split)
    below = [b for b in tree.branches(lo) if b <= frozenset(split)]
    above = [b for b in tree.branches(hi) if not b >= frozenset(split) and not b & frozenset(split)]
    i, j = min(below[0]), min(below[1])
    k, l = min(above[0]), min(above[1])
    return i, j, k, l


def km07_identity(N: int, parts: Sequence[Iterable[int]]) -> bool:
    """v_{A1∪A2}+v_{A1∪A3}+v_{A2∪A3} = v_{A1}+v_{A2}+v_{A3}+v_{A1∪A2∪A3} for a 4-part partition."""
    space = ambient(N)
    a1, a2, a3, _ = (frozenset(p) for p in parts)

    def v(s):
        # singletons and full complements give zero vectors: the distance map of a leaf is a shift
        return space.ray(s)

    lhs = space.combine([(1, v(a1 | a2)), (1, v(a1 | a3)), (1, v(a2 | a3))])
    rhs = space.combine([(1, v(a1)), (1, v(a2)), (1, v(a3)), (1, v(a1 | a2 | a3))])
    return lhs == rhs

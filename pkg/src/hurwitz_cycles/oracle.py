"""Brute-force genus-0 double Hurwitz numbers from transposition factorizations in S_d."""

from __future__ import annotations

import os
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import factorial, prod
from typing import List, Tuple

from .errors import InvalidInputError, ResourceGuardError
from .trees import RamificationVector

DEFAULT_MAX_DEGREE = 8


def max_degree() -> int:
    raw = os.environ.get("HURWITZ_MAX_DEGREE")
    if raw is None:
        return DEFAULT_MAX_DEGREE
    try:
        return int(raw)
    except ValueError:
        raise InvalidInputError(f"HURWITZ_MAX_DEGREE must be an integer, got {raw!r}") from None


@dataclass(frozen=True)
class FactorizationInstance:
    d: int
    plus: Tuple[int, ...]
    minus: Tuple[int, ...]
    r: int

    @classmethod
    def of(cls, x: RamificationVector) -> "FactorizationInstance":
        plus, minus = x.positive_part, x.negative_part
        return cls(sum(plus), plus, minus, len(plus) + len(minus) - 2)


def automorphism_factor(parts: Tuple[int, ...]) -> int:
    return prod(factorial(c) for c in Counter(parts).values())


def centralizer_order(parts: Tuple[int, ...]) -> int:
    return prod(p**c * factorial(c) for p, c in Counter(parts).items())


def permutation_of_type(parts: Tuple[int, ...]) -> Tuple[int, ...]:
    perm, start = [], 0
    for p in parts:
        perm.extend(range(start + 1, start + p))
        perm.append(start)
        start += p
    return tuple(perm)


def cycle_type(perm: List[int]) -> Tuple[int, ...]:
    seen = [False] * len(perm)
    out = []
    for i in range(len(perm)):
        if not seen[i]:
            length, j = 0, i
            while not seen[j]:
                seen[j] = True
                j = perm[j]
                length += 1
            out.append(length)
    return tuple(sorted(out, reverse=True))


def _transitive(d: int, sigma: Tuple[int, ...], transpositions: List[Tuple[int, int]]) -> bool:
    parent = list(range(d))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def union(a, b):
        parent[find(a)] = find(b)

    for i, j in enumerate(sigma):
        union(i, j)
    for a, b in transpositions:
        union(a, b)
    root = find(0)
    return all(find(i) == root for i in range(d))


def count_factorizations(inst: FactorizationInstance) -> int:
    """Tuples (τ_1..τ_r) with τ_r⋯τ_1·σ0 of type λ⁻ and transitive, for one fixed σ0 of type λ⁺."""
    d = inst.d
    sigma = permutation_of_type(inst.plus)
    transpositions = [(a, b) for a in range(d) for b in range(a + 1, d)]
    chosen: List[Tuple[int, int]] = []
    total = 0

    def step(current: List[int], depth: int) -> None:
        nonlocal total
        if depth == inst.r:
            if cycle_type(current) == inst.minus and _transitive(d, sigma, chosen):
                total += 1
            return
        for a, b in transpositions:
            nxt = list(current)
            # left-multiply by (a b): swap the images a and b
            for i, v in enumerate(nxt):
                if v == a:
                    nxt[i] = b
                elif v == b:
                    nxt[i] = a
            chosen.append((a, b))
            step(nxt, depth + 1)
            chosen.pop()

    step(list(sigma), 0)
    return total


def oracle_count_unmarked(x) -> Fraction:
    """(1/d!) times the number of transitive factorizations: covers weighted by 1/|Aut|."""
    x = x if isinstance(x, RamificationVector) else RamificationVector.of(x)
    inst = FactorizationInstance.of(x)
    if inst.d > max_degree():
        raise ResourceGuardError(f"degree {inst.d} exceeds the oracle guard {max_degree()}")
    # the class of σ0 has d!/z members, each contributing the same count
    return Fraction(count_factorizations(inst), centralizer_order(inst.plus))


def oracle_count(x) -> int:
    """Hurwitz count with marked preimages of 0 and ∞, the convention of the tree formula."""
    x = x if isinstance(x, RamificationVector) else RamificationVector.of(x)
    inst = FactorizationInstance.of(x)
    value = oracle_count_unmarked(x) * automorphism_factor(inst.plus) * automorphism_factor(inst.minus)
    if value.denominator != 1:
        raise AssertionError(f"oracle count {value} for {x.entries} is not integral")
    return int(value)

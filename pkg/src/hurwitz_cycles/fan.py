"""Tropical M_{0,N} as a fan: cones, boundary functions, Psi classes, forgetful pullbacks.

Also holds the two cover-level lattice tools used by the Hurwitz cycles: the
evaluation matrix of a cover type and the moving vector of a vertex.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from math import factorial, prod
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .complexes import Face, FaceLattice, RationalFunction
from .errors import InvalidInputError, ResourceGuardError
from .trees import DirectedTree, LabeledTree, Split, VertexKey, all_trees, enumerate_trees

MAX_FAN_N = 8


@dataclass(frozen=True)
class FanCycle:
    N: int
    dim: int
    weights: Mapping[LabeledTree, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        clean = {t: w for t, w in self.weights.items() if w}
        for t in clean:
            if len(t.splits) != self.dim:
                raise InvalidInputError(f"cone {t} does not have dimension {self.dim}")
        object.__setattr__(self, "weights", dict(sorted(clean.items())))

    def __eq__(self, other) -> bool:
        if not isinstance(other, FanCycle):
            return NotImplemented
        return (self.N, self.dim, self.weights) == (other.N, other.dim, other.weights)

    def __hash__(self) -> int:
        return hash((self.N, self.dim, tuple(self.weights.items())))

    def __len__(self) -> int:
        return len(self.weights)


def cone_face(tree: LabeledTree) -> Face:
    m = len(tree.splits)
    directions = tuple(tuple(1 if a == b else 0 for b in range(m)) for a in range(m))
    facets = tuple((tree.contract(s), directions[i]) for i, s in enumerate(tree.splits))
    return Face(tree, tree, directions, facets)


class ModuliFan:
    def __init__(self, N: int):
        if N < 3:
            raise InvalidInputError("need N >= 3")
        if N > MAX_FAN_N:
            raise ResourceGuardError(f"fan of M_0,{N} is beyond the size guard {MAX_FAN_N}")
        self.N = N
        self.lattice = FaceLattice(N, (cone_face(t) for t in all_trees(N)))

    def cones(self, dim: int) -> Tuple[LabeledTree, ...]:
        return enumerate_trees(self.N, dim + 1) if 0 <= dim <= self.N - 3 else ()

    def rays(self) -> Tuple[Split, ...]:
        return tuple(t.splits[0] for t in self.cones(1))

    def fundamental(self) -> FanCycle:
        return FanCycle(self.N, self.N - 3, {t: 1 for t in self.cones(self.N - 3)})

    def divisor(self, phi: RationalFunction, cycle: FanCycle) -> FanCycle:
        return FanCycle(self.N, cycle.dim - 1, self.lattice.divisor(phi, cycle.weights))

    def divisor_chain(self, phis: Sequence[RationalFunction], cycle: Optional[FanCycle] = None) -> FanCycle:
        cycle = self.fundamental() if cycle is None else cycle
        for phi in phis:
            cycle = self.divisor(phi, cycle)
        return cycle

    def is_balanced(self, cycle: FanCycle) -> bool:
        return not self.lattice.balancing_residuals(cycle.weights)


@lru_cache(maxsize=None)
def moduli_fan(N: int) -> ModuliFan:
    return ModuliFan(N)


def build_moduli_fan(N: int) -> ModuliFan:
    return moduli_fan(N)


# ---------------------------------------------------------------- rational functions


def phi_boundary(subset: Iterable[int], N: int) -> Dict[Split, int]:
    """φ_I: 1 on v_I, 0 on all other rays."""
    s = frozenset(subset)
    if not 2 <= len(s) <= N - 2:
        raise InvalidInputError(f"{sorted(s)} does not index a boundary divisor of M_0,{N}")
    return {_split_key(s, N): 1}


def _split_key(subset: Iterable[int], N: int) -> Split:
    s = frozenset(subset)
    return tuple(sorted(frozenset(range(1, N + 1)) - s if N in s else s))


def add_functions(*phis: RationalFunction) -> Dict[Split, int]:
    out: Dict[Split, int] = {}
    for phi in phis:
        for s, v in phi.items():
            out[s] = out.get(s, 0) + v
    return {s: v for s, v in sorted(out.items()) if v}


def pullback_phi(phi: RationalFunction, alpha: int, N: int) -> Dict[Split, int]:
    """ft_α^*: functions on M_0,N-1 (ends 1..N without α, relabeled in order) to M_0,N."""
    labels = [i for i in range(1, N + 1) if i != alpha]
    out: Dict[Split, int] = {}
    for s, v in phi.items():
        part = frozenset(labels[i - 1] for i in s)
        for extra in (part, part | {alpha}):
            key = _split_key(extra, N)
            out[key] = out.get(key, 0) + v
    return {s: v for s, v in sorted(out.items()) if v}


def pullback_boundary(subset: Iterable[int], alpha: int, N: int) -> Dict[Split, int]:
    """ft_α^*(φ_I) for I given in the labels of M_0,N (so α ∉ I)."""
    s = frozenset(subset)
    if alpha in s:
        raise InvalidInputError("the forgotten end cannot lie in I")
    return {_split_key(s, N): 1, _split_key(s | {alpha}, N): 1}


def psi_function(i: int, N: int) -> Dict[Split, int]:
    """A function whose divisor on M_0,N is Ψ_i: Σ φ_I over I ∋ i avoiding two fixed other ends."""
    j, k = [e for e in range(1, N + 1) if e != i][:2]
    out: Dict[Split, int] = {}
    for size in range(2, N - 1):
        for sub in itertools.combinations(range(1, N + 1), size):
            s = frozenset(sub)
            if i in s and j not in s and k not in s:
                key = _split_key(s, N)
                out[key] = out.get(key, 0) + 1
    return out


def cone_cut_functions(tree: LabeledTree) -> List[Dict[Split, int]]:
    """Functions φ_{A1∪A2}, ..., φ_{A1∪..∪A_{v-2}} at each vertex of valence v > 3."""
    out = []
    for v in tree.vertices:
        branches = sorted(tree.branches(v), key=lambda b: sorted(b))
        acc = frozenset()
        for idx in range(len(branches) - 2):
            acc = acc | branches[idx]
            if idx >= 1:
                out.append(phi_boundary(acc, tree.n))
    return out


# ---------------------------------------------------------------- Psi classes, combinatorially


def multinomial(parts: Sequence[int]) -> int:
    return factorial(sum(parts)) // prod(factorial(p) for p in parts)


def psi_product(exponents: Sequence[int]) -> FanCycle:
    """Ψ_1^{k_1}⋯Ψ_N^{k_N}: cones whose vertices have valence 3 + Σ k_i, multinomial weights."""
    N = len(exponents)
    total = sum(exponents)
    if any(e < 0 for e in exponents):
        raise InvalidInputError("exponents must be nonnegative")
    if total > N - 3:
        raise InvalidInputError(f"exponents sum to {total} > dim M_0,{N} = {N - 3}")
    dim = N - 3 - total
    weights = {}
    for tree in moduli_fan(N).cones(dim):
        w = 1
        for v in tree.vertices:
            ks = [exponents[i - 1] for i in tree.ends_at(v)]
            if tree.valence(v) != 3 + sum(ks):
                w = 0
                break
            w *= multinomial(ks)
        if w:
            weights[tree] = w
    return FanCycle(N, dim, weights)


def psi_class(i: int, N: int) -> FanCycle:
    exps = [0] * N
    exps[i - 1] = 1
    return psi_product(exps)


def psi_pullback_chain(alpha: int, j: int, N: int) -> FanCycle:
    """Ψ_α · ft_α^*(φ_{12}) ⋯ ft_α^*(φ_{1..j}) on M_0,N."""
    fan = moduli_fan(N)
    phis = [pullback_boundary(range(1, m + 1), alpha, N) for m in range(2, j + 1)]
    return fan.divisor_chain(phis, psi_class(alpha, N))


def boundary_chain(j: int, N: int) -> FanCycle:
    """φ_{12} ⋯ φ_{1..j} · M_0,N."""
    fan = moduli_fan(N)
    return fan.divisor_chain([phi_boundary(range(1, m + 1), N) for m in range(2, j + 1)])


# ---------------------------------------------------------------- cover-level tools


def path_edges(tree: LabeledTree, a: VertexKey, b: VertexKey) -> List[Tuple[Split, VertexKey, VertexKey]]:
    """Edges on the path a → b as (split, from, to)."""
    prev = {a: None}
    stack = [a]
    while stack:
        v = stack.pop()
        for s in tree.edges_at(v):
            w = tree.other_end(s, v)
            if w not in prev:
                prev[w] = (s, v)
                stack.append(w)
    out = []
    v = b
    while v != a:
        s, u = prev[v]
        out.append((s, u, v))
        v = u
    return out[::-1]


def evaluation_matrix(dt: DirectedTree, fixed: Sequence[VertexKey]) -> List[List[int]]:
    """Rows: image of fixed[i] minus image of fixed[0] as a function of the edge lengths.

    Columns follow dt.tree.splits; a length l on edge e moves the image by w(e)·l
    along the orientation.
    """
    if len(set(fixed)) != len(fixed):
        raise InvalidInputError("fixed vertices must be distinct")
    tree = dt.tree
    col = {s: i for i, s in enumerate(tree.splits)}
    ref = fixed[0]
    rows = []
    for v in fixed[1:]:
        row = [0] * len(tree.splits)
        for s, u, w in path_edges(tree, ref, v):
            e = dt.by_split[s]
            row[col[s]] += e.value if (e.tail, e.head) == (u, w) else -e.value
        rows.append(row)
    return rows


def moving_vector(dt: DirectedTree, v: VertexKey) -> Dict[Split, int]:
    """Direction in split coordinates obtained by raising the image of v, scaled to be integral."""
    bounded = dt.tree.edges_at(v)
    if not bounded:
        raise InvalidInputError(f"vertex {v} has no bounded edge")
    out = {}
    for s in bounded:
        e = dt.by_split[s]
        others = prod(dt.by_split[t].value for t in bounded if t != s)
        out[s] = others if e.head == v else -others
    return out

"""Tropical wall crossing: H^trop,+ - H^trop,- against the cut, glue and fold construction."""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .classical import GlueSpec, graft
from .errors import InvalidInputError
from .fan import evaluation_matrix
from .linalg import gcd_max_minors, rref
from .trees import (
    DirectedEdge,
    DirectedTree,
    LabeledTree,
    RamificationVector,
    VertexKey,
    balance,
    canonical_subset,
    chamber_of,
    check_adjacent,
    enumerate_trees,
    linear_extensions,
    opposite_chamber,
)
from .tropical import BranchPoints, cell_weight, classify_cell_k1, order_is_feasible

Signature = Tuple[LabeledTree, Tuple[Tuple[Fraction, ...], ...]]


def reweigh(dt: DirectedTree, x: RamificationVector) -> DirectedTree:
    """Keep the orientation of dt but use |weight form| evaluated at x."""
    edges = tuple(DirectedEdge(e.split, e.tail, e.head, e.weight, abs(e.weight(list(x.entries)))) for e in dt.edges)
    return DirectedTree(dt.tree, x, edges)


def cell_signature(dt: DirectedTree, positions: Mapping[VertexKey, int], images: Sequence[Fraction]) -> Signature:
    """Tree plus the reduced affine equations of the cell in edge-length coordinates."""
    tree = dt.tree
    fixed = sorted(positions, key=lambda v: positions[v])
    ref = fixed[0]
    rows = evaluation_matrix(dt, fixed)
    aug = [row + [images[positions[v]] - images[positions[ref]]] for row, v in zip(rows, fixed[1:])]
    return tree, rref(aug, len(tree.splits) + 1) if aug else ()


@dataclass
class SignedCell:
    signature: Signature
    weight: int
    side: str
    tree: LabeledTree
    moving: Tuple[VertexKey, ...]
    positions: Dict[VertexKey, int]
    dt: DirectedTree = field(repr=False)

    def classification(self) -> Optional[str]:
        if len(self.moving) != 1:
            return None
        from .tropical import TropicalCell

        order = tuple(sorted(self.positions, key=lambda v: self.positions[v]))
        return classify_cell_k1(TropicalCell(self.tree, self.moving, order, self.weight, (), self.dt))


def _side_has_fixed(tree: LabeledTree, split, moving) -> Tuple[bool, bool]:
    below = {v for v in tree.vertices if set(v) <= set(split)}
    fixed = [v for v in tree.vertices if v not in moving]
    return any(v in below for v in fixed), any(v not in below for v in fixed)


def signed_cells(x: RamificationVector, orientation: RamificationVector, k: int, points: BranchPoints,
                 wall: Tuple[int, ...], negative_rule: bool) -> List[SignedCell]:
    """Cells of the Hurwitz cycle of the chamber of `orientation`, with weights read at x."""
    n = x.n
    images = points.images
    out = []
    split = tuple(sorted(wall)) if n not in wall else tuple(i for i in range(1, n + 1) if i not in wall)
    for tree in enumerate_trees(n, n - 2):
        dt = reweigh(balance(tree, orientation), x)
        for moving in itertools.combinations(dt.vertices, k):
            weight = cell_weight(dt, moving)
            if negative_rule and split in tree.splits and all(_side_has_fixed(tree, split, moving)):
                weight = -weight
            for order in linear_extensions(dt, moving):
                positions = {v: i for i, v in enumerate(order)}
                sig = cell_signature(dt, positions, images)
                out.append(SignedCell(sig, weight, "+" if not negative_rule else "-", tree, moving, positions, dt))
    return out


def _accumulate(cells, sign: int, into: Dict[Signature, int]) -> None:
    for c in cells:
        into[c.signature] = into.get(c.signature, 0) + sign * c.weight


def _prune(d: Dict) -> Dict:
    return {k: v for k, v in d.items() if v}


# ---------------------------------------------------------------- cut and glue


def _vertex_map(factor: LabeledTree, glued: LabeledTree, labels: Sequence[int], other: frozenset) -> Dict[VertexKey, VertexKey]:
    """Factor vertex -> glued vertex, matching branch partitions; the gluing end stands for `other`."""
    glue_end = factor.n
    by_branches = {frozenset(glued.branches(v)): v for v in glued.vertices}
    out = {}
    for v in factor.vertices:
        bs = []
        for b in factor.branches(v):
            mapped = frozenset(labels[i - 1] for i in b if i != glue_end)
            if glue_end in b:
                mapped |= other
            bs.append(mapped)
        out[v] = by_branches[frozenset(bs)]
    return out


def cut_glue_weight(dt1: DirectedTree, fixed1: Sequence[VertexKey], v1: VertexKey,
                    dt2: DirectedTree, fixed2: Sequence[VertexKey], v2: VertexKey, eps: int) -> int:
    """gcd of maximal minors of the matrix of the two factors' evaluations and the gluing condition."""
    c1, c2 = len(dt1.tree.splits), len(dt2.tree.splits)
    rows = []
    for r in evaluation_matrix(dt1, list(fixed1)):
        rows.append(r + [0] * c2 + [0])
    for r in evaluation_matrix(dt2, list(fixed2)):
        rows.append([0] * c1 + r + [0])
    p1 = evaluation_matrix(dt1, [fixed1[0], v1])[0] if v1 != fixed1[0] else [0] * c1
    p2 = evaluation_matrix(dt2, [fixed2[0], v2])[0] if v2 != fixed2[0] else [0] * c2
    rows.append(p1 + [-a for a in p2] + [-eps])
    return gcd_max_minors(rows, c1 + c2 + 1)


def glue_rhs(x: RamificationVector, minus: RamificationVector, wall: Sequence[int], k: int,
             points: BranchPoints) -> Tuple[Dict[Signature, int], Dict[int, dict]]:
    n = x.n
    sub = sorted(set(wall))
    comp = [i for i in range(1, n + 1) if i not in sub]
    n1, n2 = len(sub), len(comp)
    r1, r2, r = n1 - 1, n2 - 1, n - 2
    rhs: Dict[Signature, int] = {}
    grouping: Dict[int, dict] = {}
    js = range(max(0, 1 + k - r2), min(k, r1 - 1) + 1)
    if not js:
        return rhs, grouping
    eps = x.subset_sum(sub)
    images = points.images
    spec = GlueSpec.for_wall(n, sub)
    left_x = RamificationVector.of([x.entries[i - 1] for i in sub] + [-eps])
    right_x = RamificationVector.of([x.entries[i - 1] for i in comp] + [eps])
    for j in js:
        f1 = r1 - j
        per_subset = []
        for left_pos in itertools.combinations(range(r - k), f1):
            right_pos = tuple(p for p in range(r - k) if p not in left_pos)
            pieces = Counter()
            for t1 in enumerate_trees(n1 + 1, n1 - 1):
                dt1 = balance(t1, left_x)
                v1 = t1.end_vertex(n1 + 1)
                for m1 in itertools.combinations(dt1.vertices, j):
                    for o1 in linear_extensions(dt1, m1):
                        for t2 in enumerate_trees(n2 + 1, n2 - 1):
                            dt2 = balance(t2, right_x)
                            v2 = t2.end_vertex(n2 + 1)
                            for m2 in itertools.combinations(dt2.vertices, k - j):
                                for o2 in linear_extensions(dt2, m2):
                                    w = cut_glue_weight(dt1, o1, v1, dt2, o2, v2, eps)
                                    pieces[(t1, m1, o1, t2, m2, o2, w)] += 1
                                    for cell in _glue(x, minus, spec, t1, m1, o1, left_pos, t2, m2, o2, right_pos, w, images):
                                        rhs[cell.signature] = rhs.get(cell.signature, 0) + cell.weight
            per_subset.append(pieces)
        grouping[j] = {
            "subsets": len(per_subset),
            "binomial": comb(r - k, len(sub) - 1 - j),
            "uniform": all(p == per_subset[0] for p in per_subset),
        }
    return _prune(rhs), grouping


def _glue(x, minus, spec, t1, m1, o1, left_pos, t2, m2, o2, right_pos, weight, images) -> List[SignedCell]:
    glued = graft(t1, t2, spec)
    vm1 = _vertex_map(t1, glued, spec.left_labels, frozenset(spec.right_labels))
    vm2 = _vertex_map(t2, glued, spec.right_labels, frozenset(spec.left_labels))
    positions = {vm1[v]: p for v, p in zip(o1, left_pos)}
    positions.update({vm2[v]: p for v, p in zip(o2, right_pos)})
    moving = tuple(sorted([vm1[v] for v in m1] + [vm2[v] for v in m2]))
    out = []
    for side, orient in (("+", x), ("-", minus)):
        dt = reweigh(balance(glued, orient), x)
        if order_is_feasible(dt, positions):
            sig = cell_signature(dt, positions, images)
            out.append(SignedCell(sig, weight, side, glued, moving, positions, dt))
    return out


# ---------------------------------------------------------------- the comparison


@dataclass
class WallCrossingReport:
    wall: Tuple[int, ...]
    k: int
    plus: RamificationVector
    minus: RamificationVector
    lhs: Dict[Signature, int]
    rhs: Dict[Signature, int]
    grouping: Dict[int, dict]
    noncontributing_cancel: bool
    plus_cells: List[SignedCell] = field(repr=False, default_factory=list)
    minus_cells: List[SignedCell] = field(repr=False, default_factory=list)

    @property
    def equal(self) -> bool:
        return self.lhs == self.rhs

    @property
    def binomial_ok(self) -> bool:
        return all(g["subsets"] == g["binomial"] and g["uniform"] for g in self.grouping.values())

    @property
    def ok(self) -> bool:
        return self.equal and self.binomial_ok and self.noncontributing_cancel


def tropical_wall_crossing(wall: Sequence[int], k: int, x, minus=None, points: Optional[BranchPoints] = None) -> WallCrossingReport:
    x = x if isinstance(x, RamificationVector) else RamificationVector.of(x)
    plus = chamber_of(x)
    sub = tuple(sorted(set(wall)))
    if x.subset_sum(sub) <= 0:
        raise InvalidInputError("the sum over I must be positive at x")
    minus_ch = opposite_chamber(plus, sub) if minus is None else chamber_of(minus)
    check_adjacent(plus, minus_ch, sub)
    n = x.n
    if not 0 <= k <= n - 3:
        raise InvalidInputError(f"k must lie in 0..{n - 3}")
    points = points if points is not None else BranchPoints.default(n - 2 - k - 1)
    pcells = signed_cells(x, x, k, points, sub, negative_rule=False)
    mcells = signed_cells(x, minus_ch.sample, k, points, sub, negative_rule=True)
    lhs: Dict[Signature, int] = {}
    _accumulate(pcells, 1, lhs)
    _accumulate(mcells, -1, lhs)
    lhs = _prune(lhs)
    rhs, grouping = glue_rhs(x, minus_ch.sample, sub, k, points)
    split = canonical_split(sub, n)
    cancel = _noncontributing_cancel(pcells, mcells, split)
    return WallCrossingReport(canonical_subset(sub, n), k, x, minus_ch.sample, lhs, rhs, grouping, cancel, pcells, mcells)


def canonical_split(sub: Sequence[int], n: int) -> Tuple[int, ...]:
    s = set(sub)
    return tuple(sorted(set(range(1, n + 1)) - s)) if n in s else tuple(sorted(s))


def _noncontributing_cancel(pcells, mcells, split) -> bool:
    """Cells with a side of the special edge free of fixed vertices appear identically on both sides."""
    def pick(cells):
        out = Counter()
        for c in cells:
            if split in c.tree.splits and not all(_side_has_fixed(c.tree, split, c.moving)):
                out[(c.signature, c.weight)] += 1
        return out

    return pick(pcells) == pick(mcells)

"""Tropical Hurwitz cycles H^trop_k(x) as weighted polyhedral complexes in M_{0,n}.

A top cell is a trivalent type Γ with balanced weights, a set of k moving
vertices, and a total order on the remaining (fixed) vertices.  The fixed
vertex in position ℓ is pinned to the ℓ-th smallest of the branch images
{0} ∪ p; moving vertices slide freely as long as every edge keeps a
nonnegative length (image difference divided by the edge weight).

Faces arise by shrinking edges with at least one moving endpoint.  A face is
determined by its (possibly non-trivalent) tree and the positions of the
vertices that contain a fixed vertex, which is the key used throughout.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import gcd, prod
from typing import Dict, Iterable, List, Mapping, Optional, Tuple

from .complexes import Face, FaceLattice, Residual
from .errors import InvalidInputError, VerificationError
from .fan import cone_cut_functions, evaluation_matrix, moving_vector
from .linalg import gcd_max_minors
from .trees import (
    DirectedTree,
    LabeledTree,
    RamificationVector,
    VertexKey,
    balance,
    chamber_of,
    count_orderings,
    enumerate_trees,
    linear_extensions,
    phi,
    valence_factor,
)

FaceKey = Tuple[LabeledTree, Tuple[Tuple[VertexKey, int], ...]]

CONSTANT_END = "ConstantEnd"
LINEAR_END = "LinearEnd"
LINEAR_EDGE = "LinearEdge"
QUADRATIC_EDGE = "QuadraticEdge"


@dataclass(frozen=True)
class BranchPoints:
    """The generic points p; the reference end is pinned at 0."""

    values: Tuple[Fraction, ...]

    def __post_init__(self) -> None:
        vals = tuple(Fraction(v) for v in self.values)
        object.__setattr__(self, "values", vals)
        if any(v == 0 for v in vals):
            raise InvalidInputError("branch points must differ from 0")
        if any(b <= a for a, b in zip(vals, vals[1:])):
            raise InvalidInputError("branch points must be strictly increasing")

    @classmethod
    def default(cls, count: int) -> "BranchPoints":
        return cls(tuple(Fraction(i) for i in range(1, count + 1)))

    @property
    def images(self) -> Tuple[Fraction, ...]:
        return tuple(sorted(self.values + (Fraction(0),)))

    @property
    def reference_position(self) -> int:
        return self.images.index(Fraction(0))


# ---------------------------------------------------------------- weights


def _component_roots(vertices, edges) -> Dict:
    parent = {v: v for v in vertices}

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for a, b in edges:
        parent[find(a)] = find(b)
    return {v: find(v) for v in vertices}


def admissible_shrinkings(dt: DirectedTree, moving: Iterable[VertexKey]) -> List[Tuple]:
    """Sets of k edges whose contraction merges each moving vertex into exactly one fixed vertex."""
    moving = set(moving)
    fixed = [v for v in dt.vertices if v not in moving]
    out = []
    for chosen in itertools.combinations(dt.tree.splits, len(moving)):
        ends = [dt.tree.edge_endpoints(s) for s in chosen]
        roots = _component_roots(dt.vertices, ends)
        per_root: Dict = {}
        for v in fixed:
            per_root[roots[v]] = per_root.get(roots[v], 0) + 1
        if all(c == 1 for c in per_root.values()) and all(roots[v] in per_root for v in moving):
            out.append(chosen)
    return out


def cell_weight(dt: DirectedTree, moving: Iterable[VertexKey]) -> int:
    """gcd over admissible shrinkings of the product of the surviving edge weights."""
    moving = tuple(moving)
    g = 0
    shrinkings = admissible_shrinkings(dt, moving)
    if not shrinkings:
        raise VerificationError(f"no admissible shrinking for moving set {moving}")
    for chosen in shrinkings:
        g = gcd(g, prod(dt.weight(s) for s in dt.tree.splits if s not in chosen))
    return g


def evaluation_weight(dt: DirectedTree, moving: Iterable[VertexKey], reference: Optional[VertexKey] = None) -> int:
    """gcd of the maximal minors of the evaluation matrix of the fixed vertices."""
    moving = set(moving)
    fixed = [v for v in dt.vertices if v not in moving]
    if reference is not None:
        fixed.remove(reference)
        fixed.insert(0, reference)
    rows = evaluation_matrix(dt, fixed)
    return gcd_max_minors(rows, len(dt.tree.splits)) if rows else 1


# ---------------------------------------------------------------- geometry of faces


def schedule_images(dt: DirectedTree, fixed_images: Mapping[VertexKey, Fraction]) -> Dict[VertexKey, Fraction]:
    """Images for every vertex: fixed as given, moving ones strictly between their neighbours."""
    values = sorted(set(fixed_images.values())) or [Fraction(0)]
    gaps = [b - a for a, b in zip(values, values[1:])]
    gap = min(gaps) if gaps else Fraction(1)
    step = gap / (2 * (len(dt.vertices) + 1))
    base = values[0] - 1
    preds: Dict[VertexKey, List[VertexKey]] = {v: [] for v in dt.vertices}
    for e in dt.edges:
        preds[e.head].append(e.tail)
    out: Dict[VertexKey, Fraction] = {}

    def image(v):
        if v in out:
            return out[v]
        if v in fixed_images:
            out[v] = Fraction(fixed_images[v])
        else:
            out[v] = max((image(u) for u in preds[v]), default=base) + step
        return out[v]

    for v in dt.vertices:
        image(v)
    return out


def edge_lengths(dt: DirectedTree, images: Mapping[VertexKey, Fraction]) -> Tuple[Fraction, ...]:
    return tuple((images[e.head] - images[e.tail]) / e.value for e in (dt.by_split[s] for s in dt.tree.splits))


@dataclass(frozen=True)
class FaceData:
    key: FaceKey
    dt: DirectedTree
    positions: Mapping[VertexKey, int]

    @property
    def tree(self) -> LabeledTree:
        return self.dt.tree

    @property
    def moving(self) -> Tuple[VertexKey, ...]:
        return tuple(v for v in self.dt.vertices if v not in self.positions)

    @property
    def dim(self) -> int:
        return len(self.moving)

    def directions(self) -> Tuple[Tuple[int, ...], ...]:
        out = []
        for v in self.moving:
            mv = moving_vector(self.dt, v)
            out.append(tuple(mv.get(s, 0) for s in self.tree.splits))
        return tuple(out)


def face_key(tree: LabeledTree, positions: Mapping[VertexKey, int]) -> FaceKey:
    return tree, tuple(sorted(positions.items(), key=lambda kv: kv[1]))


def order_is_feasible(dt: DirectedTree, positions: Mapping[VertexKey, int]) -> bool:
    """Fixed positions must strictly increase along every directed path."""
    for u, pu in positions.items():
        for w in dt.below[u]:
            if w in positions and positions[w] <= pu:
                return False
    return True


# ---------------------------------------------------------------- cells and the cycle


@dataclass(frozen=True)
class TropicalCell:
    tree: LabeledTree
    moving: Tuple[VertexKey, ...]
    order: Tuple[VertexKey, ...]
    weight: int
    images: Tuple[Fraction, ...]
    dt: DirectedTree = field(compare=False, repr=False)

    @property
    def key(self) -> Tuple:
        return self.tree, self.moving, self.order

    @property
    def positions(self) -> Dict[VertexKey, int]:
        return {v: i for i, v in enumerate(self.order)}

    @property
    def face_key(self) -> FaceKey:
        return face_key(self.tree, self.positions)

    def vertex_images(self) -> Dict[VertexKey, Fraction]:
        return schedule_images(self.dt, {v: self.images[i] for i, v in enumerate(self.order)})

    def lengths(self) -> Tuple[Fraction, ...]:
        return edge_lengths(self.dt, self.vertex_images())

    def moving_vectors(self) -> Tuple[Dict, ...]:
        return tuple(moving_vector(self.dt, v) for v in self.moving)


def classify_cell_k1(cell: TropicalCell) -> str:
    if len(cell.moving) != 1:
        raise InvalidInputError("classification is defined for one-dimensional cells only")
    (v,) = cell.moving
    tree, dt = cell.tree, cell.dt
    bounded = tree.edges_at(v)
    if len(bounded) == 1:
        return CONSTANT_END
    if len(bounded) == 3:
        return QUADRATIC_EDGE
    into = [dt.by_split[s].head == v for s in bounded]
    return LINEAR_END if into[0] == into[1] else LINEAR_EDGE


class TropicalHurwitzCycle:
    def __init__(self, x, k: int, points: Optional[BranchPoints] = None, orientation=None):
        """`orientation`, when given, is a ramification vector whose chamber fixes edge directions."""
        self.x = x if isinstance(x, RamificationVector) else RamificationVector.of(x)
        chamber_of(self.x)
        self.n = self.x.n
        self.k = k
        r = self.n - 2
        if not 0 <= k <= self.n - 3:
            raise InvalidInputError(f"k must lie in 0..{self.n - 3}")
        self.points = points if points is not None else BranchPoints.default(r - k - 1)
        if len(self.points.values) != r - k - 1:
            raise InvalidInputError(f"need {r - k - 1} branch points, got {len(self.points.values)}")
        self.orientation = self.x if orientation is None else orientation
        self._dts: Dict[LabeledTree, DirectedTree] = {}
        self.cells = self._build()

    def directed(self, tree: LabeledTree) -> DirectedTree:
        if tree not in self._dts:
            self._dts[tree] = balance(tree, self.orientation)
        return self._dts[tree]

    def _build(self) -> Tuple[TropicalCell, ...]:
        images = self.points.images
        cells = []
        for tree in enumerate_trees(self.n, self.n - 2):
            dt = self.directed(tree)
            for moving in itertools.combinations(dt.vertices, self.k):
                weight = cell_weight(dt, moving)
                for order in linear_extensions(dt, moving):
                    cells.append(TropicalCell(tree, moving, order, weight, images, dt))
        return tuple(cells)

    def top_weights(self) -> Dict[FaceKey, int]:
        out: Dict[FaceKey, int] = {}
        for c in self.cells:
            out[c.face_key] = out.get(c.face_key, 0) + c.weight
        return out

    def cell_by_face(self) -> Dict[FaceKey, TropicalCell]:
        return {c.face_key: c for c in self.cells}

    # faces ---------------------------------------------------------------
    def _facets_of(self, face: FaceData) -> List[Tuple[FaceData, Tuple[int, ...]]]:
        dt = face.dt
        pos = face.positions
        out = []
        for s in dt.tree.splits:
            e = dt.by_split[s]
            t_fixed, h_fixed = e.tail in pos, e.head in pos
            if t_fixed and h_fixed:
                continue
            lo, hi = dt.tree.edge_endpoints(s)
            merged = dt.tree.merged_vertex(s)
            new_pos = {v: p for v, p in pos.items() if v not in (lo, hi)}
            if lo in pos or hi in pos:
                new_pos[merged] = pos[lo] if lo in pos else pos[hi]
            tree = dt.tree.contract(s)
            sub = self.directed(tree)
            if not order_is_feasible(sub, new_pos):
                continue
            if not t_fixed and h_fixed:
                vec = {t: -c for t, c in moving_vector(dt, e.tail).items()}
            else:
                vec = moving_vector(dt, e.head)
            inward = tuple(vec.get(t, 0) for t in dt.tree.splits)
            out.append((FaceData(face_key(tree, new_pos), sub, new_pos), inward))
        return out

    @cached_property
    def face_data(self) -> Dict[FaceKey, FaceData]:
        out: Dict[FaceKey, FaceData] = {}
        frontier = []
        for c in self.cells:
            fd = FaceData(c.face_key, c.dt, c.positions)
            if fd.key not in out:
                out[fd.key] = fd
                frontier.append(fd)
        self._facet_map: Dict[FaceKey, Tuple] = {}
        while frontier:
            nxt = []
            for fd in frontier:
                facets = self._facets_of(fd)
                self._facet_map[fd.key] = tuple((g.key, m) for g, m in facets)
                for g, _ in facets:
                    if g.key not in out:
                        out[g.key] = g
                        nxt.append(g)
            frontier = nxt
        return out

    @cached_property
    def lattice(self) -> FaceLattice:
        data = self.face_data
        faces = (Face(fd.key, fd.tree, fd.directions(), self._facet_map[fd.key]) for fd in data.values())
        return FaceLattice(self.n, faces)

    def faces(self, dim: int) -> List[FaceData]:
        return sorted((f for f in self.face_data.values() if f.dim == dim), key=lambda f: repr(f.key))

    def face_images(self, key: FaceKey) -> Dict[VertexKey, Fraction]:
        fd = self.face_data[key]
        images = self.points.images
        return schedule_images(fd.dt, {v: images[p] for v, p in fd.positions.items()})


def build_tropical_cycle(x, k: int, p: Optional[BranchPoints] = None) -> TropicalHurwitzCycle:
    return TropicalHurwitzCycle(x, k, p)


# ---------------------------------------------------------------- verification


@dataclass
class BalancingReport:
    faces_checked: int
    failures: List[Residual]

    @property
    def ok(self) -> bool:
        return not self.failures


def check_balancing(cycle: TropicalHurwitzCycle, weights: Optional[Mapping[FaceKey, int]] = None) -> BalancingReport:
    weights = cycle.top_weights() if weights is None else weights
    if cycle.k == 0:
        return BalancingReport(0, [])
    lattice = cycle.lattice
    failures = lattice.balancing_residuals(weights)
    checked = len(lattice.normal_sums(weights))
    return BalancingReport(checked, failures)


@dataclass(frozen=True)
class SkeletonPoint:
    key: FaceKey
    weight: int
    expected: int


def star_lattice(cycle: TropicalHurwitzCycle, cone: LabeledTree) -> FaceLattice:
    """Faces whose tree refines `cone`; enough to compute any intersection supported on it."""
    need = set(cone.splits)
    faces = [f for f in cycle.lattice.faces.values() if need <= set(f.tree.splits)]
    return FaceLattice(cycle.n, faces)


def skeleton_intersect(cycle: TropicalHurwitzCycle, cone: LabeledTree) -> Dict[FaceKey, int]:
    """Points of (cut functions of the cone) · H^trop lying in the relative interior of the cone."""
    if cone.n != cycle.n or len(cone.splits) != cycle.n - 3 - cycle.k:
        raise InvalidInputError(f"cone must have codimension {cycle.k} in M_0,{cycle.n}")
    lattice = star_lattice(cycle, cone)
    weights = {key: w for key, w in cycle.top_weights().items() if key in lattice}
    result = lattice.divisor_chain(cone_cut_functions(cone), weights)
    return {key: w for key, w in result.items() if key[0] == cone}


def skeleton_expectation(cycle: TropicalHurwitzCycle, cone: LabeledTree) -> Tuple[int, int]:
    """(number of points, weight of each point) predicted by the orderings of the cone's type."""
    dt = balance(cone, cycle.orientation)
    return count_orderings(dt), valence_factor(cone) * phi(dt)(list(cycle.x.entries))


# ---------------------------------------------------------------- correspondence with the classical side


@dataclass
class CorrespondenceRow:
    dim: int
    tropical: int
    classical: int
    incidences_ok: bool


def classical_strata_data(n: int, x, k: int, dim: int) -> Dict[FaceKey, Tuple[VertexKey, ...]]:
    """Classical data (Γ, moving vertices, order of the others) for trees with r-k+dim vertices.

    A vertex of valence v stands for v-2 trivalent vertices, so the counts of
    absorbed moving vertices add up to k automatically.
    """
    out = {}
    r = n - 2
    for tree in enumerate_trees(n, r - k + dim):
        dt = balance(tree, x)
        for moving in itertools.combinations(dt.vertices, dim):
            for order in linear_extensions(dt, moving):
                out[face_key(tree, {v: i for i, v in enumerate(order)})] = moving
    return out


def correspondence_report(x, k: int, cycle: Optional[TropicalHurwitzCycle] = None) -> List[CorrespondenceRow]:
    cycle = cycle or TropicalHurwitzCycle(x, k)
    rows = []
    for dim in range(0, k + 1):
        trop = {f.key for f in cycle.faces(dim)}
        clas = set(classical_strata_data(cycle.n, cycle.orientation, k, dim))
        incid = True
        for key in trop:
            for facet_key, _ in cycle.lattice.faces[key].facets:
                if facet_key not in cycle.face_data:
                    incid = False
                elif not set(facet_key[0].splits) < set(key[0].splits):
                    incid = False
        rows.append(CorrespondenceRow(dim, len(trop), len(clas), incid and trop == clas))
    return rows

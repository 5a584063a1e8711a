"""Weighted polyhedral complexes inside tropical M_{0,N}: divisors of rational functions and balancing.

Every face lives in the closed cone of some tree and is described by integer
direction vectors in that tree's split coordinates.  The rays of a cone of
M_{0,N} form a basis of the lattice points in its span, so lattice computations
for a face can be done in Z^{splits}.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Hashable, Iterable, List, Mapping, Sequence, Tuple

from .ambient import AmbientSpace, AmbientVector, ambient
from .linalg import gcd_max_minors, in_row_span
from .trees import LabeledTree, Split

RationalFunction = Mapping[Split, int]  # value on each ray v_S; linear on every cone


@dataclass(frozen=True)
class Face:
    key: Hashable
    tree: LabeledTree
    directions: Tuple[Tuple[int, ...], ...]
    facets: Tuple[Tuple[Hashable, Tuple[int, ...]], ...]

    @property
    def dim(self) -> int:
        return len(self.directions)


def pad(vector: Sequence, source: LabeledTree, target: LabeledTree) -> Tuple:
    """Re-express split coordinates of a face of `target`'s cone in `target` coordinates."""
    pos = {s: i for i, s in enumerate(source.splits)}
    return tuple(vector[pos[s]] if s in pos else 0 for s in target.splits)


def phi_linear(phi: RationalFunction, tree: LabeledTree, coords: Sequence) -> Fraction:
    return sum((Fraction(phi.get(s, 0)) * c for s, c in zip(tree.splits, coords)), Fraction(0))


@dataclass
class Residual:
    face: Hashable
    vector: AmbientVector
    coordinates: Tuple[Fraction, ...]
    reason: str


class FaceLattice:
    def __init__(self, N: int, faces: Iterable[Face]):
        self.N = N
        self.space: AmbientSpace = ambient(N)
        self.faces: Dict[Hashable, Face] = {}
        for f in faces:
            self.faces[f.key] = f
        self._normals: Dict[Tuple[Hashable, Hashable], Tuple[Fraction, ...]] = {}

    def __contains__(self, key) -> bool:
        return key in self.faces

    def of_dim(self, d: int) -> List[Face]:
        return [f for f in self.faces.values() if f.dim == d]

    def primitive_normal(self, sigma: Face, tau_key: Hashable, inward: Sequence[int]) -> Tuple[Fraction, ...]:
        """Primitive generator of the lattice of sigma modulo that of tau, pointing along `inward`."""
        cache_key = (sigma.key, tau_key)
        if cache_key not in self._normals:
            tau = self.faces[tau_key]
            base = [list(pad(d, tau.tree, sigma.tree)) for d in tau.directions]
            ncols = len(sigma.tree.splits)
            inner = gcd_max_minors(base, ncols) if base else 1
            outer = gcd_max_minors(base + [list(inward)], ncols)
            if outer == 0:
                raise ValueError(f"inward vector of {sigma.key} at {tau_key} is not transverse")
            scale = Fraction(outer, inner)
            self._normals[cache_key] = tuple(Fraction(v) / scale for v in inward)
        return self._normals[cache_key]

    def normal_sums(self, weights: Mapping[Hashable, int]):
        """For each facet tau: (Σ ω·φ-ready normals per sigma, Σ ω u as an ambient vector)."""
        per_face: Dict[Hashable, List[Tuple[int, Face, Tuple[Fraction, ...]]]] = {}
        for key, w in weights.items():
            if not w:
                continue
            sigma = self.faces[key]
            for tau_key, inward in sigma.facets:
                if tau_key not in self.faces:
                    continue
                u = self.primitive_normal(sigma, tau_key, inward)
                per_face.setdefault(tau_key, []).append((w, sigma, u))
        return per_face

    def divisor(self, phi: RationalFunction, weights: Mapping[Hashable, int]) -> Dict[Hashable, int]:
        out: Dict[Hashable, int] = {}
        for tau_key, items in self.normal_sums(weights).items():
            tau = self.faces[tau_key]
            scalar = Fraction(0)
            vecs = []
            for w, sigma, u in items:
                scalar += w * phi_linear(phi, sigma.tree, u)
                vecs.append((Fraction(w), self.space.from_tree(sigma.tree, u)))
            total = self.space.combine(vecs)
            value = scalar - phi_linear(phi, tau.tree, self.space.split_coordinates(total, tau.tree))
            if value.denominator != 1:
                raise ArithmeticError(f"non-integral divisor weight {value} at {tau_key}")
            if value:
                out[tau_key] = int(value)
        return dict(sorted(out.items(), key=lambda kv: repr(kv[0])))

    def divisor_chain(self, phis: Sequence[RationalFunction], weights: Mapping[Hashable, int]) -> Dict[Hashable, int]:
        for phi in phis:
            weights = self.divisor(phi, weights)
        return weights

    def balancing_residuals(self, weights: Mapping[Hashable, int]) -> List[Residual]:
        bad = []
        for tau_key, items in sorted(self.normal_sums(weights).items(), key=lambda kv: repr(kv[0])):
            tau = self.faces[tau_key]
            total = self.space.combine((Fraction(w), self.space.from_tree(s.tree, u)) for w, s, u in items)
            coords = self.space.split_coordinates(total, tau.tree)
            if self.space.from_tree(tau.tree, coords) != total:
                bad.append(Residual(tau_key, total, coords, "sum of weighted normals leaves the cone span"))
            elif not in_row_span(coords, [list(d) for d in tau.directions], len(tau.tree.splits)):
                bad.append(Residual(tau_key, total, coords, "sum of weighted normals not parallel to the face"))
        return bad

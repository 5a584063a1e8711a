"""JSON and DOT rendering of cycles and reports.

JSON output is canonical: keys sorted, terms sorted, fractions written as
"p/q" strings, monomials keyed by their exponent tuple "e1,...,en".
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Dict, Iterable, List, Mapping, Optional, Sequence

from .classical import CycleClass
from .errors import InvalidInputError
from .polynomial import IntPolynomial
from .trees import DirectedTree, LabeledTree, RamificationVector, balance
from .tropical import BranchPoints, TropicalCell, TropicalHurwitzCycle, classify_cell_k1


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


def _key(ints: Iterable[int]) -> str:
    return ",".join(str(i) for i in ints)


def _unkey(text: str) -> tuple:
    return tuple(int(t) for t in text.split(",")) if text else ()


def _frac(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


# ---------------------------------------------------------------- polynomials and classical cycles


def polynomial_to_json(p: IntPolynomial) -> Dict[str, int]:
    return {_key(exp): c for exp, c in p.terms.items()}


def polynomial_from_json(data: Mapping[str, int], n: int) -> IntPolynomial:
    return IntPolynomial(n, {_unkey(k): int(v) for k, v in data.items()})


def classical_to_json(cycle: CycleClass) -> List[dict]:
    return [
        {"splits": [list(s) for s in tree.splits], "coeff": polynomial_to_json(poly)}
        for tree, poly in cycle.terms.items()
    ]


def classical_from_json(records: Sequence[Mapping], n: int, k: int) -> CycleClass:
    terms = {}
    for rec in records:
        tree = LabeledTree.from_splits(n, rec["splits"])
        terms[tree] = polynomial_from_json(rec["coeff"], n)
    return CycleClass(n, k, terms)


# ---------------------------------------------------------------- tropical cycles


def _cell_type(cell: TropicalCell) -> str:
    return classify_cell_k1(cell) if len(cell.moving) == 1 else f"cell{len(cell.moving)}"


def tropical_to_json(cycle: TropicalHurwitzCycle) -> List[dict]:
    out = []
    for cell in cycle.cells:
        out.append({
            "splits": [list(s) for s in cell.tree.splits],
            "type": _cell_type(cell),
            "moving": [list(v) for v in cell.moving],
            "order": [list(v) for v in cell.order],
            "weight": cell.weight,
            "vertex_images": {_key(v): _frac(q) for v, q in sorted(cell.vertex_images().items())},
            "moving_vectors": [{_key(s): c for s, c in sorted(mv.items())} for mv in cell.moving_vectors()],
        })
    return sorted(out, key=lambda rec: json.dumps(rec, sort_keys=True))


def tropical_from_json(records: Sequence[Mapping], x, k: int, points: Optional[BranchPoints] = None) -> List[TropicalCell]:
    """Rebuild cells; orientation and edge data are recomputed from x and checked against the record."""
    x = x if isinstance(x, RamificationVector) else RamificationVector.of(x)
    n = x.n
    points = points if points is not None else BranchPoints.default(n - 3 - k)
    cells = []
    for rec in records:
        tree = LabeledTree.from_splits(n, rec["splits"])
        dt = balance(tree, x)
        moving = tuple(tuple(v) for v in rec["moving"])
        order = tuple(tuple(v) for v in rec["order"])
        if len(moving) != k:
            raise InvalidInputError(f"cell has {len(moving)} moving vertices, expected {k}")
        cell = TropicalCell(tree, moving, order, int(rec["weight"]), points.images, dt)
        images = {_key(v): _frac(q) for v, q in cell.vertex_images().items()}
        if images != dict(rec["vertex_images"]):
            raise InvalidInputError(f"vertex images of cell {rec['splits']} do not match x and the branch points")
        cells.append(cell)
    return sorted(cells, key=lambda c: repr(c.key))


# ---------------------------------------------------------------- wall crossing


def _signature_to_json(sig) -> dict:
    tree, rows = sig
    return {"splits": [list(s) for s in tree.splits], "equations": [[_frac(q) for q in row] for row in rows]}


def wallcross_to_json(report) -> dict:
    def side(d):
        recs = [dict(_signature_to_json(s), weight=w) for s, w in d.items()]
        return sorted(recs, key=lambda r: json.dumps(r, sort_keys=True))

    return {
        "wall": list(report.wall),
        "k": report.k,
        "plus": list(report.plus.entries),
        "minus": list(report.minus.entries),
        "lhs": side(report.lhs),
        "rhs": side(report.rhs),
        "equal": report.equal,
        "binomial": {str(j): g for j, g in sorted(report.grouping.items())},
        "noncontributing_cancel": report.noncontributing_cancel,
    }


# ---------------------------------------------------------------- DOT


def _node(v) -> str:
    return "v" + "_".join(str(i) for i in v)


def tree_dot(dt: DirectedTree, name: str = "tree", label: Optional[str] = None, prefix: str = "") -> List[str]:
    lines = [f"subgraph cluster_{name} {{"]
    if label:
        lines.append(f'  label="{label}";')
    tree = dt.tree
    for v in tree.vertices:
        lines.append(f'  {prefix}{_node(v)} [shape=point];')
        for i in tree.ends_at(v):
            lines.append(f'  {prefix}end{i} [label="{i}", shape=plaintext];')
            lines.append(f"  {prefix}end{i} -- {prefix}{_node(v)};")
    for e in dt.edges:
        lines.append(f'  {prefix}{_node(e.tail)} -- {prefix}{_node(e.head)} [label="{e.weight}"];')
    lines.append("}")
    return lines


def classical_dot(cycle: CycleClass, x) -> str:
    x = x if isinstance(x, RamificationVector) else RamificationVector.of(x)
    lines = ["graph classical {"]
    for i, (tree, poly) in enumerate(cycle.terms.items()):
        lines += ["  " + ln for ln in tree_dot(balance(tree, x), f"t{i}", str(poly), f"t{i}_")]
    lines.append("}")
    return "\n".join(lines) + "\n"


def tropical_dot(cycle: TropicalHurwitzCycle) -> str:
    """For k = 1 the curve itself: one node per point face, one edge per cell, ends go to open nodes."""
    if cycle.k != 1:
        lines = ["graph tropical {"]
        for i, cell in enumerate(cycle.cells):
            lines += ["  " + ln for ln in tree_dot(cell.dt, f"c{i}", f"weight {cell.weight}", f"c{i}_")]
        lines.append("}")
        return "\n".join(lines) + "\n"
    lattice = cycle.lattice
    names = {}
    for face in cycle.faces(0):
        names[face.key] = f"p{len(names)}"
    lines = ["graph hurwitz_curve {"]
    for key, nm in sorted(names.items(), key=lambda kv: kv[1]):
        tree = key[0]
        lines.append(f'  {nm} [label="{_tree_label(tree)}"];')
    for i, (key, w) in enumerate(sorted(cycle.top_weights().items(), key=lambda kv: repr(kv[0]))):
        ends = [names[f] for f, _ in lattice.faces[key].facets if f in names]
        if len(ends) == 1:
            lines.append(f"  inf{i} [shape=point];")
            ends.append(f"inf{i}")
        lines.append(f'  {ends[0]} -- {ends[1]} [label="{w}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def _tree_label(tree: LabeledTree) -> str:
    return " ".join("{" + _key(s) + "}" for s in tree.splits) or "star"

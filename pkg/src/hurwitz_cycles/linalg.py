"""Exact integer and rational matrix helpers on top of sympy's DomainMatrix."""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import List, Sequence, Tuple

from sympy import QQ, ZZ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.normalforms import invariant_factors

Row = Sequence[int]


def _zz(rows: Sequence[Row], ncols: int) -> DomainMatrix:
    return DomainMatrix([[ZZ(int(v)) for v in r] for r in rows], (len(rows), ncols), ZZ)


def _qq(rows: Sequence[Sequence], ncols: int) -> DomainMatrix:
    data = [[QQ(Fraction(v).numerator, Fraction(v).denominator) for v in r] for r in rows]
    return DomainMatrix(data, (len(rows), ncols), QQ)


def det(rows: Sequence[Row]) -> int:
    if not rows:
        return 1
    return int(_zz(rows, len(rows)).det())


def rank(rows: Sequence[Sequence], ncols: int) -> int:
    if not rows:
        return 0
    return _qq(rows, ncols).rank()


def gcd_max_minors(rows: Sequence[Row], ncols: int) -> int:
    """gcd of the |rows|-sized minors; 0 when the rows are dependent.

    Equal to the product of the invariant factors, which avoids enumerating minors.
    """
    if not rows:
        return 1
    if len(rows) > ncols:
        return 0
    factors = invariant_factors(_zz(rows, ncols))
    if len(factors) < len(rows):
        return 0
    out = 1
    for f in factors:
        out *= int(f)
    return abs(out)


def gcd_max_minors_bruteforce(rows: Sequence[Row], ncols: int) -> int:
    import itertools

    g = 0
    for cols in itertools.combinations(range(ncols), len(rows)):
        g = gcd(g, det([[r[c] for c in cols] for r in rows]))
    return g


def rref(rows: Sequence[Sequence], ncols: int) -> Tuple[Tuple[Fraction, ...], ...]:
    """Reduced row echelon form with zero rows dropped, as Fractions."""
    if not rows:
        return ()
    m, _ = _qq(rows, ncols).rref()
    out = []
    for r in m.to_Matrix().tolist():
        vals = tuple(Fraction(int(v.p), int(v.q)) for v in r)
        if any(vals):
            out.append(vals)
    return tuple(out)


def in_row_span(vector: Sequence, rows: Sequence[Sequence], ncols: int) -> bool:
    return rank(list(rows) + [list(vector)], ncols) == rank(rows, ncols)


def solve_rational(rows: Sequence[Sequence], rhs: Sequence, ncols: int) -> List[Fraction]:
    """One solution of A y = b (A given by rows), or raise ValueError."""
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red = rref(aug, ncols + 1)
    sol = [Fraction(0)] * ncols
    for r in red:
        lead = next(i for i, v in enumerate(r) if v)
        if lead == ncols:
            raise ValueError("inconsistent system")
        sol[lead] = r[ncols]
    return sol

from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from hurwitz_cycles.linalg import (
    det,
    gcd_max_minors,
    gcd_max_minors_bruteforce,
    in_row_span,
    rank,
    rref,
    solve_rational,
)


@st.composite
def matrices(draw, max_rows=4, max_cols=5, bound=6):
    ncols = draw(st.integers(1, max_cols))
    nrows = draw(st.integers(1, min(max_rows, ncols)))
    rows = draw(st.lists(st.lists(st.integers(-bound, bound), min_size=ncols, max_size=ncols),
                         min_size=nrows, max_size=nrows))
    return rows, ncols


@given(matrices())
def test_gcd_of_minors_matches_bruteforce(m):
    rows, ncols = m
    assert gcd_max_minors(rows, ncols) == gcd_max_minors_bruteforce(rows, ncols)


@given(matrices())
def test_rank_matches_sympy(m):
    rows, ncols = m
    assert rank(rows, ncols) == sympy.Matrix(rows).rank()


@given(st.integers(1, 4).flatmap(lambda k: st.lists(st.lists(st.integers(-5, 5), min_size=k, max_size=k), min_size=k, max_size=k)))
def test_det_matches_sympy(rows):
    assert det(rows) == sympy.Matrix(rows).det()


@given(matrices(), st.lists(st.integers(-3, 3), min_size=4, max_size=4))
def test_row_span_membership(m, coeffs):
    rows, ncols = m
    combo = [sum(c * r[j] for c, r in zip(coeffs, rows)) for j in range(ncols)]
    assert in_row_span(combo, rows, ncols)


@given(matrices())
def test_rref_is_canonical_under_row_operations(m):
    rows, ncols = m
    mixed = [list(r) for r in rows]
    if len(mixed) > 1:
        mixed[0] = [a + 2 * b for a, b in zip(mixed[0], mixed[1])]
    assert rref(rows, ncols) == rref(mixed, ncols)


def test_rank_deficient_gcd_is_zero():
    assert gcd_max_minors([[1, 2], [2, 4]], 2) == 0


def test_gcd_of_minors_small_cases():
    assert gcd_max_minors([[2, 0, 0], [0, 3, 0]], 3) == 6
    assert gcd_max_minors([[2, 0, 1], [0, 3, 0]], 3) == 3
    assert gcd_max_minors([[2, 4, 6]], 3) == 2
    assert gcd_max_minors([[2, 0], [0, 2]], 2) == 4


def test_solve_rational():
    sol = solve_rational([[2, 1], [1, 3]], [3, 5], 2)
    assert sol == [Fraction(4, 5), Fraction(7, 5)]


def test_solve_inconsistent_raises():
    with pytest.raises(ValueError):
        solve_rational([[1, 1], [2, 2]], [1, 3], 2)

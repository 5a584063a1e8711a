from fractions import Fraction
from math import factorial, prod

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st
from sympy.matrices.normalforms import hermite_normal_form

from hurwitz_cycles.ambient import ambient, km07_identity
from hurwitz_cycles.errors import InvalidInputError, ResourceGuardError
from hurwitz_cycles.fan import (
    FanCycle,
    ModuliFan,
    boundary_chain,
    moduli_fan,
    phi_boundary,
    psi_class,
    psi_function,
    psi_product,
    psi_pullback_chain,
    pullback_boundary,
    pullback_phi,
)
from hurwitz_cycles.linalg import gcd_max_minors, solve_rational
from hurwitz_cycles.trees import LabeledTree
from oracles import boundary_chain_oracle, pullback_chain_oracle


@pytest.mark.parametrize("N", range(4, 8))
def test_ray_count(N):
    assert len(moduli_fan(N).rays()) == 2 ** (N - 1) - 1 - N


@pytest.mark.parametrize("N", range(4, 8))
def test_fundamental_class_is_balanced(N):
    fan = moduli_fan(N)
    assert fan.is_balanced(fan.fundamental())


def test_mutated_fundamental_class_is_not_balanced():
    fan = moduli_fan(5)
    cyc = fan.fundamental()
    tree = next(iter(cyc.weights))
    bad = FanCycle(5, 2, {**cyc.weights, tree: 2})
    assert not fan.is_balanced(bad)


@pytest.mark.parametrize("N", range(4, 8))
def test_psi_top_power_is_one_point(N):
    cyc = psi_product([N - 3] + [0] * (N - 1))
    assert cyc.weights == {LabeledTree.star(N): 1}


@given(st.integers(4, 7).flatmap(lambda N: st.lists(st.integers(0, 2), min_size=N, max_size=N)))
def test_psi_degrees_are_multinomial(exps):
    N = len(exps)
    if sum(exps) != N - 3:
        return
    cyc = psi_product(exps)
    assert cyc.weights == {LabeledTree.star(N): factorial(N - 3) // prod(factorial(e) for e in exps)}


@pytest.mark.parametrize("N", [4, 5, 6])
def test_psi_engine_matches_combinatorial_class(N):
    fan = moduli_fan(N)
    for i in range(1, N + 1):
        assert fan.divisor(psi_function(i, N), fan.fundamental()) == psi_class(i, N)


@pytest.mark.parametrize("N,exps", [(5, [1, 0, 0, 0, 0]), (6, [1, 1, 0, 0, 0, 0]), (6, [0, 2, 0, 0, 0, 0]), (7, [1, 0, 1, 0, 0, 0, 0])])
def test_psi_products_are_balanced(N, exps):
    fan = moduli_fan(N)
    assert fan.is_balanced(psi_product(exps))


def test_psi_product_guard():
    with pytest.raises(InvalidInputError):
        psi_product([2, 1, 0, 0, 0])


@pytest.mark.parametrize("N", range(4, 8))
@pytest.mark.parametrize("j", [2, 3])
def test_boundary_chain_lemma(N, j):
    if j > N - 3:
        pytest.skip("chain longer than the dimension")
    assert boundary_chain(j, N).weights == boundary_chain_oracle(j, N)


@pytest.mark.parametrize("N", range(5, 8))
@pytest.mark.parametrize("j", [1, 2, 3])
def test_pullback_chain_lemma(N, j):
    if j > N - 3 or j + 1 > N - 1:
        pytest.skip("chain longer than the dimension")
    assert psi_pullback_chain(N, j, N).weights == pullback_chain_oracle(N, j, N)


def test_pullback_of_boundary_function():
    assert pullback_phi({(1, 2): 1}, 5, 5) == pullback_boundary([1, 2], 5, 5)
    assert pullback_boundary([1, 2], 5, 5) == {(1, 2): 1, (3, 4): 1}


def test_phi_boundary_rejects_singletons():
    with pytest.raises(InvalidInputError):
        phi_boundary([1], 5)


def test_size_guard():
    with pytest.raises(ResourceGuardError):
        ModuliFan(9)


@pytest.mark.parametrize("N", [5, 6, 7])
def test_km07_relation(N):
    for parts in [[[1], [2], [3], range(4, N + 1)], [[1, 2], [3], [4], range(5, N + 1)]]:
        assert km07_identity(N, parts)


@pytest.mark.parametrize("N", [4, 5, 6, 7])
def test_cones_are_unimodular(N):
    """The rays of every cone extend to a basis of the lattice spanned by all v_I."""
    space = ambient(N)
    fan = moduli_fan(N)
    rays = {s: [2 * c for c in space.reduced_coordinates(space.ray(s))] for s in fan.rays()}
    assert all(Fraction(c).denominator == 1 for r in rays.values() for c in r)
    m = sympy.Matrix([[int(c) for c in r] for r in rays.values()]).T
    hnf = hermite_normal_form(m)
    basis = [list(hnf.col(j)) for j in range(hnf.cols) if any(hnf.col(j))]
    assert len(basis) == N * (N - 3) // 2
    cols = list(map(list, zip(*basis)))
    coords = {s: solve_rational(cols, r, len(basis)) for s, r in rays.items()}
    assert all(c.denominator == 1 for v in coords.values() for c in v)
    for tree in fan.cones(N - 3):
        rows = [[int(c) for c in coords[s]] for s in tree.splits]
        assert gcd_max_minors(rows, len(basis)) == 1


@given(st.integers(5, 7).flatmap(lambda N: st.tuples(st.just(N), st.lists(st.integers(0, 3), min_size=N, max_size=N))))
def test_km07_random_partitions(data):
    N, labels = data
    parts = [[i + 1 for i, c in enumerate(labels) if c == j] for j in range(4)]
    if any(not p for p in parts):
        return
    assert km07_identity(N, parts)

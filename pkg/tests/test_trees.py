import itertools
from math import prod

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hurwitz_cycles.errors import InvalidInputError, NonAdjacentChambersError, OnWallError
from hurwitz_cycles.trees import (
    LabeledTree,
    RamificationVector,
    all_trees,
    balance,
    canonical_subset,
    chamber_of,
    check_adjacent,
    compatible,
    count_orderings,
    enumerate_trees,
    linear_extensions,
    opposite_chamber,
    phi,
    straddling_pair,
    walls,
)
from oracles import orderings_bruteforce
from strategies import ramification_vectors, trees


def double_factorial(m):
    return prod(range(m, 0, -2))


@pytest.mark.parametrize("n", range(3, 9))
def test_trivalent_tree_count(n):
    assert len(enumerate_trees(n, n - 2)) == double_factorial(2 * n - 5)


@pytest.mark.parametrize("n,total", [(3, 1), (4, 4), (5, 26), (6, 236), (7, 2752)])
def test_all_tree_count(n, total):
    assert len(all_trees(n)) == total


@given(trees())
def test_vertex_count_and_valences(tree):
    assert len(tree.vertices) == len(tree.splits) + 1
    assert sum(tree.valence(v) for v in tree.vertices) == tree.n + 2 * len(tree.splits)
    assert sum(tree.valence(v) - 2 for v in tree.vertices) == tree.n - 2


@given(trees())
def test_splits_pairwise_compatible(tree):
    for a, b in itertools.combinations(tree.splits, 2):
        assert compatible(a, b)


@given(trees())
def test_contraction_drops_one_split(tree):
    for s in tree.splits:
        smaller = tree.contract(s)
        assert set(smaller.splits) == set(tree.splits) - {s}


@given(trees(), st.randoms())
def test_relabel_round_trip(tree, rnd):
    perm = list(range(1, tree.n + 1))
    rnd.shuffle(perm)
    mapping = dict(zip(range(1, tree.n + 1), perm))
    inverse = {v: k for k, v in mapping.items()}
    assert tree.relabel(mapping).relabel(inverse) == tree


def test_splits_are_stored_avoiding_the_last_end():
    t = LabeledTree.from_splits(5, [[3, 4, 5]])
    assert t.splits == ((1, 2),)


def test_incompatible_splits_rejected():
    with pytest.raises(InvalidInputError):
        LabeledTree.from_splits(5, [[1, 2], [2, 3]])


def test_canonical_subset():
    assert canonical_subset([1, 4, 5], 5) == (2, 3)
    assert canonical_subset([2, 3, 4, 5], 5) == (1,)
    with pytest.raises(InvalidInputError):
        canonical_subset([], 4)


def test_wall_count():
    # 2^(n-1) - 1 splits of 1..n into two nonempty parts
    assert len(walls(5)) == 15
    assert len(walls(6)) == 31


@given(ramification_vectors(), trees(n_min=3, n_max=6))
def test_balance_gives_positive_flows(x, tree):
    if tree.n != x.n:
        return
    dt = balance(tree, x)
    assert dt.is_balanced()
    for e in dt.edges:
        assert e.value == abs(x.subset_sum(e.split)) == e.weight(list(x.entries))


@given(ramification_vectors(n_max=6))
def test_orderings_match_bruteforce(x):
    for tree in enumerate_trees(x.n, x.n - 2)[:20]:
        assert count_orderings(balance(tree, x)) == orderings_bruteforce(tree, x.entries)


@given(ramification_vectors(n_max=6))
def test_linear_extensions_are_counted(x):
    for tree in enumerate_trees(x.n, x.n - 2)[:10]:
        dt = balance(tree, x)
        exts = list(linear_extensions(dt))
        assert len(exts) == len(set(exts)) == count_orderings(dt)
        for order in exts:
            pos = {v: i for i, v in enumerate(order)}
            assert all(pos[e.tail] < pos[e.head] for e in dt.edges)


@given(ramification_vectors(n_max=6))
def test_phi_evaluates_to_product_of_flows(x):
    for tree in enumerate_trees(x.n, x.n - 2)[:10]:
        dt = balance(tree, x)
        assert phi(dt)(list(x.entries)) == prod(e.value for e in dt.edges)


@given(ramification_vectors(n_max=6))
def test_phi_is_constant_on_the_chamber(x):
    ch = chamber_of(x)
    y = [3 * v for v in x.entries]
    for tree in enumerate_trees(x.n, x.n - 2)[:10]:
        assert phi(balance(tree, ch))(y) == phi(balance(tree, y))(y)


def test_ramification_vector_validation():
    with pytest.raises(InvalidInputError):
        RamificationVector.of([1, 2, -2])
    with pytest.raises(InvalidInputError):
        RamificationVector.of([1, 0, -1])
    x = RamificationVector.of([3, 1, -2, -2])
    assert (x.n, x.r, x.degree) == (4, 2, 4)


def test_on_wall_names_the_wall():
    with pytest.raises(OnWallError) as info:
        chamber_of([1, 1, -1, -1])
    assert info.value.wall_name == "W{1,3}"


def test_adjacency_checks():
    plus = chamber_of([20, 1, -6, -7, -8])
    minus = chamber_of([16, 7, -6, -8, -9])
    assert check_adjacent(plus, minus, [1, 4, 5]) == (2, 3)
    with pytest.raises(InvalidInputError):
        check_adjacent(minus, plus, [1, 4, 5])
    with pytest.raises(NonAdjacentChambersError):
        check_adjacent(plus, chamber_of([-20, -1, 6, 7, 8]), [1, 4, 5])


@pytest.mark.parametrize("seed", range(3))
@pytest.mark.parametrize("n", [4, 5, 6])
def test_straddling_pairs_are_adjacent(n, seed):
    for w in walls(n):
        plus, minus = straddling_pair(n, w.subset, seed)
        assert plus.disagreements(minus) == [w.subset]
        assert opposite_chamber(plus, w.subset).disagreements(plus) == [w.subset]


@given(ramification_vectors(n_max=6), st.data())
def test_phi_degree_is_edge_count(x, data):
    tree = data.draw(st.sampled_from(enumerate_trees(x.n, data.draw(st.integers(1, x.n - 2)))))
    dt = balance(tree, x)
    p = phi(dt)
    assert p.is_homogeneous(len(tree.vertices) - 1)
    assert p(list(x.entries)) > 0

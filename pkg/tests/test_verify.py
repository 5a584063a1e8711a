import pytest
from hypothesis import given
from hypothesis import strategies as st

from hurwitz_cycles.ambient import ambient
from hurwitz_cycles.trees import LabeledTree, chamber_of
from hurwitz_cycles.verify import SUITES, off_wall_vectors, points_in_chamber, run_suite
from strategies import trees


@pytest.mark.parametrize("suite", sorted(SUITES))
def test_suites_pass_for_n4(suite):
    results = run_suite(suite, 4, seed=1)
    assert results and all(r.passed for r in results)


def test_off_wall_enumeration_is_off_wall():
    xs = list(off_wall_vectors(4, 3))
    assert xs and all(chamber_of(x) for x in xs)


def test_points_stay_in_chamber():
    import random

    ch = chamber_of([20, 1, -6, -7, -8])
    pts = points_in_chamber(ch, 5, random.Random(0))
    assert len(set(pts)) == 5 and all(chamber_of(p).same_as(ch) for p in pts)


@given(trees(n_min=4, n_max=7), st.lists(st.integers(-5, 5), min_size=5, max_size=5))
def test_split_coordinates_invert_the_embedding(tree, coeffs):
    space = ambient(tree.n)
    coeffs = coeffs[: len(tree.splits)] + [0] * max(0, len(tree.splits) - len(coeffs))
    vec = space.from_tree(tree, coeffs)
    assert list(space.split_coordinates(vec, tree)) == coeffs
    assert space.in_cone_span(vec, tree)


def test_embedding_dimension():
    for N in range(4, 8):
        assert ambient(N).dimension == N * (N - 3) // 2


def test_ray_out_of_span():
    space = ambient(5)
    tree = LabeledTree.from_splits(5, [[1, 2]])
    assert not space.in_cone_span(space.ray((1, 3)), tree)

import sympy
from hypothesis import given
from hypothesis import strategies as st

from hurwitz_cycles.polynomial import IntPolynomial, LinearForm

N = 4
SYMS = sympy.symbols(f"x1:{N + 1}")

exponents = st.tuples(*[st.integers(0, 3)] * N)
polys = st.dictionaries(exponents, st.integers(-20, 20), max_size=6).map(lambda t: IntPolynomial(N, t))
forms = st.tuples(*[st.integers(-5, 5)] * N).map(LinearForm)
points = st.tuples(*[st.integers(-7, 7)] * N)


def to_sympy(p: IntPolynomial):
    return sympy.Add(*[c * sympy.Mul(*[s**k for s, k in zip(SYMS, e)]) for e, c in p.terms.items()])


def from_sympy(expr) -> IntPolynomial:
    poly = sympy.Poly(sympy.expand(expr), *SYMS)
    return IntPolynomial(N, {tuple(m): int(c) for m, c in poly.terms()})


@given(polys, polys)
def test_product_matches_sympy(p, q):
    assert p * q == from_sympy(to_sympy(p) * to_sympy(q))


@given(polys, polys, polys)
def test_ring_axioms(p, q, r):
    assert p + q == q + p
    assert (p + q) * r == p * r + q * r
    assert p - p == IntPolynomial.zero(N)
    assert (p * q) * r == p * (q * r)


@given(polys, polys, points)
def test_evaluation_is_a_homomorphism(p, q, x):
    assert (p * q)(x) == p(x) * q(x)
    assert (p + q)(x) == p(x) + q(x)


@given(polys, st.lists(forms, min_size=N, max_size=N), points)
def test_substitute_then_evaluate(p, fs, x):
    assert p.substitute(fs)(x) == p([f(x) for f in fs])


@given(polys, points)
def test_reduce_sum_zero_preserves_values_on_the_lattice(p, x):
    x = x[:-1] + (-sum(x[:-1]),)
    reduced = p.reduce_sum_zero()
    assert reduced(x) == p(x)
    assert not any(e[-1] for e in reduced.terms)


@given(forms, points)
def test_linear_form_reduction(f, x):
    x = x[:-1] + (-sum(x[:-1]),)
    assert f.reduce_sum_zero()(x) == f(x)
    assert f.to_poly()(x) == f(x)


def test_zero_terms_are_dropped():
    p = IntPolynomial(2, {(1, 0): 3, (0, 1): 0})
    assert p.terms == {(1, 0): 3}
    assert (p - p).is_zero()


def test_string_form():
    p = LinearForm((1, 1, 0)).to_poly() * LinearForm((1, 0, -1)).to_poly()
    assert str(p) == "x1^2 + x1*x2 - x1*x3 - x2*x3"


def test_homogeneity():
    p = LinearForm((1, 2)).to_poly() * LinearForm((0, 1)).to_poly()
    assert p.is_homogeneous(2) and not (p + IntPolynomial.constant(2, 1)).is_homogeneous(2)

"""Exact integer linear forms and sparse multivariate polynomials in x1..xn."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, Mapping, Sequence, Tuple, Union

Number = Union[int, Fraction]
Exponent = Tuple[int, ...]


@dataclass(frozen=True)
class LinearForm:
    """Integer linear form sum(c_i * x_i)."""

    coeffs: Tuple[int, ...]

    @classmethod
    def subset_sum(cls, n: int, subset: Iterable[int], sign: int = 1) -> "LinearForm":
        members = set(subset)
        return cls(tuple(sign if i + 1 in members else 0 for i in range(n)))

    @property
    def n(self) -> int:
        return len(self.coeffs)

    def __call__(self, x: Sequence[Number]) -> Number:
        if len(x) != self.n:
            raise ValueError(f"expected {self.n} values, got {len(x)}")
        return sum(c * v for c, v in zip(self.coeffs, x))

    def __neg__(self) -> "LinearForm":
        return LinearForm(tuple(-c for c in self.coeffs))

    def __add__(self, other: "LinearForm") -> "LinearForm":
        return LinearForm(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "LinearForm") -> "LinearForm":
        return self + (-other)

    def reduce_sum_zero(self) -> "LinearForm":
        """Representative modulo x1 + ... + xn, with no x_n term."""
        last = self.coeffs[-1]
        return LinearForm(tuple(c - last for c in self.coeffs[:-1]) + (0,))

    def to_poly(self) -> "IntPolynomial":
        terms = {}
        for i, c in enumerate(self.coeffs):
            if c:
                exp = [0] * self.n
                exp[i] = 1
                terms[tuple(exp)] = c
        return IntPolynomial(self.n, terms)

    def __str__(self) -> str:
        return str(self.to_poly())


@dataclass(frozen=True)
class IntPolynomial:
    """Sparse polynomial with integer coefficients; zero coefficients are never stored."""

    n: int
    terms: Mapping[Exponent, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        clean: Dict[Exponent, int] = {}
        for exp, c in self.terms.items():
            exp = tuple(exp)
            if len(exp) != self.n:
                raise ValueError("exponent length does not match variable count")
            if c:
                clean[exp] = clean.get(exp, 0) + int(c)
        clean = {e: c for e, c in clean.items() if c}
        object.__setattr__(self, "terms", dict(sorted(clean.items())))

    @classmethod
    def constant(cls, n: int, c: int) -> "IntPolynomial":
        return cls(n, {(0,) * n: c})

    @classmethod
    def zero(cls, n: int) -> "IntPolynomial":
        return cls(n, {})

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IntPolynomial):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.n, tuple(self.terms.items())))

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return IntPolynomial(self.n, out)

    def __neg__(self) -> "IntPolynomial":
        return IntPolynomial(self.n, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "IntPolynomial") -> "IntPolynomial":
        return self + (-other)

    def __mul__(self, other: Union["IntPolynomial", int]) -> "IntPolynomial":
        if isinstance(other, int):
            return IntPolynomial(self.n, {e: c * other for e, c in self.terms.items()})
        self._check(other)
        out: Dict[Exponent, int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return IntPolynomial(self.n, out)

    __rmul__ = __mul__

    def __call__(self, x: Sequence[Number]) -> Number:
        if len(x) != self.n:
            raise ValueError(f"expected {self.n} values, got {len(x)}")
        total: Number = 0
        for exp, c in self.terms.items():
            term: Number = c
            for v, k in zip(x, exp):
                if k:
                    term *= v**k
            total += term
        return total

    def degrees(self) -> set:
        return {sum(e) for e in self.terms}

    def is_homogeneous(self, degree: int) -> bool:
        return all(sum(e) == degree for e in self.terms)

    def substitute(self, forms: Sequence[LinearForm]) -> "IntPolynomial":
        """Replace variable i by forms[i]; result lives in the forms' ring."""
        if len(forms) != self.n:
            raise ValueError("need one linear form per variable")
        m = forms[0].n if forms else 0
        images = [f.to_poly() for f in forms]
        total = IntPolynomial.zero(m)
        for exp, c in self.terms.items():
            term = IntPolynomial.constant(m, c)
            for img, k in zip(images, exp):
                for _ in range(k):
                    term = term * img
            total = total + term
        return total

    def reduce_sum_zero(self) -> "IntPolynomial":
        """Normal form modulo x1 + ... + xn: eliminate x_n."""
        if not any(e[-1] for e in self.terms):
            return self
        forms = [LinearForm.subset_sum(self.n, [i]) for i in range(1, self.n)]
        forms.append(LinearForm(tuple([-1] * (self.n - 1) + [0])))
        return self.substitute(forms)

    def _check(self, other: "IntPolynomial") -> None:
        if self.n != other.n:
            raise ValueError("polynomials live in different rings")

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for exp, c in sorted(self.terms.items(), reverse=True):
            mono = "*".join(
                f"x{i + 1}" + (f"^{k}" if k > 1 else "") for i, k in enumerate(exp) if k
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    __repr__ = __str__

from fractions import Fraction

import pytest as pt
import sympy as sp
from hypothesis import strategies as st

import hurwitzkit as hk

WORKED_CUBIC = [6, 11, 6, 1]


@pt.fixture(scope="session")
def worked_cubic() -> hk.Polynomial:
    return hk.poly_new(WORKED_CUBIC)


@pt.fixture(scope="session")
def worked_examples():
    return hk.worked_examples()


@pt.fixture(scope="session")
def degenerate_corpus():
    return hk.degenerate_corpus()


@pt.fixture(scope="session")
def stable_corpus() -> list:
    return [hk.gen_stable(1 + seed % 8, seed) for seed in range(40)]


@pt.fixture(scope="session")
def random_corpus() -> list:
    return [hk.gen_random(1 + seed % 8, seed) for seed in range(60)]


@pt.fixture(scope="session")
def crosscheck_table():
    return hk.crosscheck(12, degree_max=5, seed=42)


@pt.fixture(
    scope="session",
    params=[
        [],
        "6 11 6 1",
        [True, 1],
        [1, float("Inf")],
        [1, float("NaN")],
        [1, None],
    ],
)
def bad_coeffs(request):
    return request.param


small_rationals = st.fractions(
    min_value=-20, max_value=20, max_denominator=6
)


@st.composite
def polynomials(draw, min_degree=1, max_degree=6) -> hk.Polynomial:
    degree = draw(st.integers(min_degree, max_degree))
    coeffs = draw(
        st.lists(small_rationals, min_size=degree + 1, max_size=degree + 1)
    )
    lead = draw(
        small_rationals.filter(lambda x: x != 0)
    )
    return hk.poly_new(coeffs[:-1] + [lead])


@st.composite
def stable_polynomials(draw, max_degree=8) -> hk.Polynomial:
    degree = draw(st.integers(1, max_degree))
    seed = draw(st.integers(0, 2**32 - 1))
    return hk.gen_stable(degree, seed)


def frac_list(values) -> list:
    return [Fraction(v) for v in values]


def to_sympy(f: hk.Polynomial) -> sp.Poly:
    coeffs = [sp.Rational(a.numerator, a.denominator) for a in f.coeffs]
    return sp.Poly(list(reversed(coeffs)), sp.Symbol("x"), domain="QQ")


def from_sympy(g: sp.Poly) -> list:
    return [Fraction(int(c.p), int(c.q)) for c in reversed(g.all_coeffs())]

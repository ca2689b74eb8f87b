from fractions import Fraction

import numpy as np
import pytest as pt
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

import hurwitzkit as hk

from .conftest import frac_list, from_sympy, polynomials, to_sympy


class TestPolynomial:
    @pt.mark.parametrize(
        "coeffs, expected, degree",
        [
            ([6, 11, 6, 1], (6, 11, 6, 1), 3),
            ([1, 2, 0, 0], (1, 2), 1),
            ([0, 0], (0,), 0),
            (
                ["1/2", 0.25, Fraction(3, 4)],
                frac_list(["1/2", "1/4", "3/4"]),
                2,
            ),
        ],
    )
    def test_poly_new_normalizes(self, coeffs, expected, degree):
        f = hk.poly_new(coeffs)
        assert f.coeffs == tuple(expected)
        assert f.degree == degree

    def test_zero_polynomial(self):
        f = hk.poly_new([0, 0, 0])
        assert f.is_zero
        assert f.degree == 0
        assert str(f) == "0"

    def test_poly_new_raises_on_bad_input(self, bad_coeffs):
        with pt.raises(Exception):
            hk.poly_new(bad_coeffs)

    @pt.mark.parametrize(
        "coeffs, expected",
        [
            ([6, 11, 6, 1], "6 + 11x + 6x^2 + x^3"),
            ([0, Fraction(60, 11)], "(60/11)x"),
            ([-1, 0, -2], "-1 - 2x^2"),
            ([0, -1], "-x"),
        ],
    )
    def test_str(self, coeffs, expected):
        assert str(hk.poly_new(coeffs)) == expected

    def test_coeff_outside_range_is_zero(self, worked_cubic):
        assert worked_cubic.coeff(-1) == 0
        assert worked_cubic.coeff(7) == 0
        assert worked_cubic.coeff(1) == 11
        assert worked_cubic.leading == 1

    def test_evaluation(self, worked_cubic):
        assert worked_cubic(-1) == 0
        assert worked_cubic(2) == 60
        assert hk.eval_rational(worked_cubic, "1/2") == Fraction(105, 8)


class TestEvenOdd:
    def test_split_worked_cubic(self, worked_cubic):
        pair = hk.even_odd_split(worked_cubic)
        assert pair.p.coeffs == (6, 6)
        assert pair.q.coeffs == (11, 1)

    def test_split_without_odd_part(self):
        pair = hk.even_odd_split(hk.poly_new([5]))
        assert pair.p.coeffs == (5,)
        assert pair.q.is_zero

    def test_split_raises_on_zero(self):
        with pt.raises(ValueError):
            hk.even_odd_split(hk.poly_new([0]))

    @settings(max_examples=50, deadline=None)
    @given(polynomials(max_degree=8))
    def test_recombine_inverts_split(self, f):
        assert hk.recombine(hk.even_odd_split(f)) == f

    @settings(max_examples=25, deadline=None)
    @given(polynomials(max_degree=8), st.integers(0, 2**32 - 1))
    def test_recombine_evaluates_parts(self, f, seed):
        rng = np.random.default_rng(seed)
        nums = rng.integers(-50, 51, size=100)
        dens = rng.integers(1, 13, size=100)
        pair = hk.even_odd_split(f)
        g = hk.recombine(pair)
        for n, d in zip(nums, dens):
            x = Fraction(int(n), int(d))
            even = hk.eval_rational(pair.p, x * x)
            odd = hk.eval_rational(pair.q, x * x)
            assert hk.eval_rational(g, x) == even + x * odd


class TestArithmetic:
    def test_divide_by_x(self):
        assert hk.divide_by_x(hk.poly_new([0, 1, 2])).coeffs == (1, 2)
        assert hk.divide_by_x(hk.poly_new([0])).is_zero

    def test_divide_by_x_raises_on_nonzero_constant(self):
        with pt.raises(ValueError):
            hk.divide_by_x(hk.poly_new([1, 1]))

    def test_sub_scaled(self):
        p, q = hk.poly_new([6, 6]), hk.poly_new([11, 1])
        out = hk.sub_scaled(p, Fraction(6, 11), q)
        assert out.coeffs == (0, Fraction(60, 11))

    def test_substitute_neg_x_squared(self):
        out = hk.substitute_neg_x_squared(hk.poly_new([6, 6, 1]))
        assert out.coeffs == (6, 0, -6, 0, 1)

    def test_derivative_and_monic(self):
        f = hk.poly_new([1, 2, 3, 4])
        assert hk.derivative(f).coeffs == (2, 6, 12)
        expected = frac_list(["1/4", "1/2", "3/4", "1"])
        assert hk.monic(f).coeffs == tuple(expected)

    def test_divmod(self):
        a, b = hk.poly_new([-1, 0, 1]), hk.poly_new([1, 1])
        quot, rem = hk.poly_divmod(a, b)
        assert quot.coeffs == (-1, 1)
        assert rem.is_zero

    def test_divmod_raises_on_zero_divisor(self):
        with pt.raises(ZeroDivisionError):
            hk.poly_divmod(hk.poly_new([1, 1]), hk.poly_new([0]))

    @settings(max_examples=50, deadline=None)
    @given(polynomials(max_degree=6), polynomials(max_degree=4))
    def test_divmod_reconstructs_dividend(self, a, b):
        quot, rem = hk.poly_divmod(a, b)
        assert rem.is_zero or rem.degree < b.degree
        expected = to_sympy(a)
        actual = to_sympy(quot) * to_sympy(b) + to_sympy(rem)
        assert actual == expected


class TestGcd:
    def test_gcd_example(self):
        g = hk.poly_gcd(hk.poly_new([-1, 0, 1]), hk.poly_new([1, 1]))
        assert g.coeffs == (1, 1)

    def test_gcd_of_coprime_is_one(self, worked_cubic):
        pair = hk.even_odd_split(worked_cubic)
        assert hk.poly_gcd(pair.p, pair.q).coeffs == (1,)

    def test_gcd_raises_on_two_zeros(self):
        with pt.raises(ValueError):
            hk.poly_gcd(hk.poly_new([0]), hk.poly_new([0]))

    @settings(max_examples=50, deadline=None)
    @given(polynomials(), polynomials())
    def test_gcd_matches_sympy(self, p, q):
        expected = from_sympy(sp.gcd(to_sympy(p), to_sympy(q)).monic())
        assert list(hk.poly_gcd(p, q).coeffs) == expected

    @settings(max_examples=50, deadline=None)
    @given(polynomials(), polynomials())
    def test_gcd_divides_both(self, p, q):
        g = hk.poly_gcd(p, q)
        assert hk.poly_divmod(p, g)[1].is_zero
        assert hk.poly_divmod(q, g)[1].is_zero


class TestSquareFree:
    def test_decomposition(self):
        # (x + 1)^2 (x + 2)
        factors = hk.square_free_decomposition(hk.poly_new([2, 5, 4, 1]))
        assert [(s.coeffs, i) for s, i in factors] == [
            ((2, 1), 1),
            ((1, 1), 2),
        ]

    def test_constant_decomposes_to_nothing(self):
        assert hk.square_free_decomposition(hk.poly_new([7])) == []

    def test_zero_raises(self):
        with pt.raises(ValueError):
            hk.square_free_decomposition(hk.poly_new([0]))

    def test_square_free_part(self):
        out = hk.square_free_part(hk.poly_new([2, 5, 4, 1]))
        assert out.coeffs == (2, 3, 1)

    @pt.mark.parametrize(
        "coeffs, expected",
        [([6, 11, 6, 1], 12), ([5], 1), ([-1, 0, 2], Fraction(3, 2))],
    )
    def test_cauchy_bound(self, coeffs, expected):
        assert hk.cauchy_bound(hk.poly_new(coeffs)) == expected


class TestUtils:
    @pt.mark.parametrize(
        "value, expected",
        [
            (3, Fraction(3)),
            (0.5, Fraction(1, 2)),
            ("0.1", Fraction(1, 10)),
            ("-7/3", Fraction(-7, 3)),
        ],
    )
    def test_to_fraction(self, value, expected):
        assert hk.utils.to_fraction(value) == expected

    def test_check_sizes_collects_messages(self):
        with pt.raises(ValueError) as exc:
            hk.utils.check_sizes(rows=0, cols="a")
        assert "'rows' must be a positive integer." in str(exc.value)
        assert "'cols' must be an integer." in str(exc.value)

from fractions import Fraction

import numpy as np
import pytest as pt
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

import hurwitzkit as hk

from .conftest import polynomials, small_rationals


def as_lists(matrix) -> list:
    return [[Fraction(x) for x in row] for row in matrix]


class TestTruncations:
    def test_hurwitz_truncation_worked_cubic(self, worked_cubic):
        h = hk.hurwitz_truncation(worked_cubic, 4, 4)
        assert as_lists(h) == [
            [6, 6, 0, 0],
            [0, 11, 1, 0],
            [0, 6, 6, 0],
            [0, 0, 11, 1],
        ]

    def test_hurwitz_truncation_rectangular(self):
        h = hk.hurwitz_truncation([1, 2, 3], 2, 4)
        assert as_lists(h) == [[1, 3, 0, 0], [0, 2, 0, 0]]

    def test_j_truncation(self):
        j = hk.j_truncation(2, 4, 5)
        assert as_lists(j) == [
            [2, 1, 0, 0, 0],
            [0, 0, 1, 0, 0],
            [0, 0, 2, 1, 0],
            [0, 0, 0, 0, 1],
        ]

    @pt.mark.parametrize("rows, cols", [(0, 3), (3, 0), (2.5, 2)])
    def test_bad_sizes_raise(self, worked_cubic, rows, cols):
        with pt.raises(ValueError):
            hk.hurwitz_truncation(worked_cubic, rows, cols)

    def test_as_rational_matrix(self):
        m = hk.as_rational_matrix([["1/2", 1], [0, 0.25]])
        assert m.dtype == object
        assert m[0, 0] == Fraction(1, 2)
        assert m[1, 1] == Fraction(1, 4)
        with pt.raises(ValueError):
            hk.as_rational_matrix([[1, 2], [3]])

    @pt.mark.parametrize("rows, cols", [(1, 1), (2, 5), (4, 3), (7, 9)])
    def test_truncations_are_nested(self, stable_corpus, rows, cols):
        for f in stable_corpus[:10]:
            big = hk.hurwitz_truncation(f, 7, 9)
            small = hk.hurwitz_truncation(f, rows, cols)
            assert np.array_equal(big[:rows, :cols], small)
        for c in (Fraction(6, 11), -2, 0):
            big = hk.j_truncation(c, 7, 9)
            small = hk.j_truncation(c, rows, cols)
            assert np.array_equal(big[:rows, :cols], small)



class TestFactorization:
    def test_step_factorization(self, worked_cubic):
        assert hk.verify_step_factorization(worked_cubic, 4, 4)

    def test_step_factorization_fails_for_wrong_parameter(self, worked_cubic):
        wrong = Fraction(6, 11) + 1
        assert not hk.verify_step_factorization(worked_cubic, 4, 4, c=wrong)

    @pt.mark.parametrize(
        "coeffs, size", [([6, 11, 6, 1], 6), ([1, 1], 4), ([1, -1, 1], 6)]
    )
    def test_full_factorization(self, coeffs, size):
        assert hk.verify_full_factorization(coeffs, size, size)

    def test_full_factorization_raises_without_chain(self):
        with pt.raises(hk.RouthChainError) as exc:
            hk.verify_full_factorization([1, 1, 1, 1], 8, 8)
        assert exc.value.failure.step == 2

    def test_factorization_product_matches_hurwitz(self, worked_cubic):
        chain = hk.routh_chain(worked_cubic)
        product = hk.factorization_product(chain, 5, 7)
        expected = hk.hurwitz_truncation(worked_cubic, 5, 7)
        assert np.array_equal(product, expected)

    def test_full_factorization_on_stable_corpus(self, stable_corpus):
        for f in stable_corpus:
            size = 2 * (f.degree + 1)
            assert hk.verify_full_factorization(f, size, size)

    @settings(max_examples=40, deadline=None)
    @given(polynomials(max_degree=5))
    def test_step_factorization_holds_whenever_step_is_defined(self, f):
        try:
            hk.routh_step(f)
        except ValueError:
            return None
        assert hk.verify_step_factorization(f, f.degree + 2, f.degree + 3)


class TestDeterminant:
    @pt.mark.parametrize(
        "matrix, expected",
        [
            ([[0, 1], [1, 0]], -1),
            ([[0, 0], [0, 1]], 0),
            ([["1/2", "1/3"], ["1/4", "1/5"]], Fraction(1, 60)),
            ([[2]], 2),
            ([[0, 2, 1], [1, 0, 0], [0, 1, 3]], -5),
        ],
    )
    def test_known_values(self, matrix, expected):
        assert hk.determinant(matrix) == expected

    def test_non_square_raises(self):
        with pt.raises(ValueError):
            hk.determinant([[1, 2, 3], [4, 5, 6]])

    @settings(max_examples=50, deadline=None)
    @given(
        st.integers(1, 5).flatmap(
            lambda n: st.lists(
                st.lists(small_rationals, min_size=n, max_size=n),
                min_size=n,
                max_size=n,
            )
        )
    )
    def test_matches_sympy(self, rows):
        entries = [
            [sp.Rational(x.numerator, x.denominator) for x in r] for r in rows
        ]
        expected = sp.Matrix(entries).det()
        assert hk.determinant(rows) == Fraction(
            int(expected.p), int(expected.q)
        )


class TestMinors:
    def test_worked_cubic(self, worked_cubic):
        minors = hk.leading_principal_minors(worked_cubic, 4)
        assert minors.values == (6, 66, 360, 360)

    def test_minor_criterion_worked_cubic(self, worked_cubic):
        report = hk.minor_criterion(worked_cubic)
        assert report.is_stable
        assert report.method is hk.Method.MINORS
        assert report.witness.factorization_holds

    def test_minor_criterion_right_half_plane(self):
        report = hk.minor_criterion([1, -1, 1])
        assert not report.is_stable
        assert report.witness.values == (1, -1, -1)
        assert report.witness.factorization_holds is False

    def test_imaginary_axis_has_zero_minor(self):
        assert hk.leading_principal_minors([1, 1, 1, 1], 4).values[2] == 0

    def test_corpora(self, worked_examples, degenerate_corpus):
        for df in (worked_examples, degenerate_corpus):
            for row in df.itertuples():
                report = hk.minor_criterion(row.poly)
                assert report.verdict.value == row.verdict

    def test_agrees_with_routh(self, stable_corpus, random_corpus):
        for f in stable_corpus + random_corpus:
            expected = hk.is_stable_routh(f).verdict
            assert hk.minor_criterion(f).verdict is expected

    def test_minor_recurrence(self, stable_corpus, random_corpus):
        checked = 0
        for f in stable_corpus + random_corpus:
            try:
                c, f_tilde = hk.routh_step(f)
            except ValueError:
                continue
            n = f.degree
            minors_f = hk.leading_principal_minors(f, n + 1).values
            minors_tilde = (1,) + hk.leading_principal_minors(
                f_tilde, n
            ).values
            scale = c * f_tilde.coeffs[0]
            for j in range(n + 1):
                assert minors_f[j] == scale * minors_tilde[j]
            checked += 1
        assert checked > 0

    def test_bad_k_raises(self, worked_cubic):
        with pt.raises(ValueError):
            hk.leading_principal_minors(worked_cubic, 0)


class TestTotalNonnegativity:
    def test_worked_cubic(self, worked_cubic):
        h = hk.hurwitz_truncation(worked_cubic, 6, 6)
        result = hk.all_minors_nonnegative(h, 3)
        assert result.ok
        assert result.counterexample is None
        assert result.checked == 6 * 6 + 15 * 15 + 20 * 20

    def test_counterexample(self):
        h = hk.hurwitz_truncation([1, -1, 1], 4, 4)
        result = hk.all_minors_nonnegative(h, 2)
        assert not result.ok
        assert result.counterexample == ((2,), (2,), Fraction(-1))
        assert result.checked == 6

    def test_scaled_counterexample_value(self):
        m = hk.as_rational_matrix([["1/2", "-1/3"], [1, 1]])
        result = hk.all_minors_nonnegative(m, 2)
        assert result.counterexample == ((1,), (2,), Fraction(-1, 3))

    def test_stable_corpus_is_totally_nonnegative(self, stable_corpus):
        for f in stable_corpus:
            if f.degree > 4:
                continue
            size = f.degree + 3
            h = hk.hurwitz_truncation(f, size, size)
            assert hk.all_minors_nonnegative(h, 3).ok

    @pt.mark.parametrize("c", [0, Fraction(3, 2), 7])
    def test_j_factor_is_totally_nonnegative(self, c):
        assert hk.all_minors_nonnegative(hk.j_truncation(c, 5, 6), 4).ok

    def test_order_too_large_raises(self, worked_cubic):
        h = hk.hurwitz_truncation(worked_cubic, 3, 4)
        with pt.raises(ValueError):
            hk.all_minors_nonnegative(h, 4)

    def test_warns_on_large_enumeration(self, worked_cubic, monkeypatch):
        monkeypatch.setattr(hk.hurwitz, "TNN_WARN_COUNT", 10)
        h = hk.hurwitz_truncation(worked_cubic, 4, 4)
        with pt.warns(UserWarning):
            hk.all_minors_nonnegative(h, 2)

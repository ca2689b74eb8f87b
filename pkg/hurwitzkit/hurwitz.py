import logging
import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Optional

import numpy as np

from .poly import PolynomialLike, as_polynomial, common_denominator, poly_new
from .routh import (
    FailureReason,
    Method,
    RouthChainError,
    RouthFailure,
    StabilityReport,
    Verdict,
    normalize_sign,
    routh_chain,
    routh_step,
)
from .utils import RationalLike, check_sizes, to_fraction

logger = logging.getLogger(__name__)

# Dense exact matrix: 2-D numpy array of dtype object holding Fractions
RationalMatrix = np.ndarray

TNN_WARN_COUNT = 5_000_000


@dataclass(frozen=True)
class MinorSequence:
    """
    Leading principal minors :math:`\\Delta_1, \\ldots, \\Delta_k` of a
    Hurwitz matrix (:math:`\\Delta_0 = 1` is implicit).
    ``factorization_holds`` is filled in by :func:`minor_criterion` only.
    """

    values: tuple
    factorization_holds: Optional[bool] = None


@dataclass(frozen=True)
class TNNResult:
    """
    Outcome of a brute-force total nonnegativity check. ``counterexample``
    is ``(rows, cols, value)`` with 1-indexed row and column tuples.
    """

    ok: bool
    counterexample: Optional[tuple] = None
    checked: int = 0


def _zeros(rows: int, cols: int) -> RationalMatrix:
    return np.full((rows, cols), Fraction(0), dtype=object)


def as_rational_matrix(entries) -> RationalMatrix:
    """Convert a nested sequence of rationals to a ``RationalMatrix``."""
    rows = [[to_fraction(x) for x in row] for row in entries]
    if not rows or not rows[0] or len({len(r) for r in rows}) > 1:
        raise ValueError("A matrix needs equal-length, nonempty rows.")
    out = _zeros(len(rows), len(rows[0]))
    for i, row in enumerate(rows):
        out[i, :] = row
    return out


def hurwitz_truncation(
    f: PolynomialLike, rows: int, cols: int
) -> RationalMatrix:
    """
    Top-left ``rows`` x ``cols`` corner of the infinite Hurwitz matrix

    .. code-block:: text

        a0 a2 a4 a6 ...
        0  a1 a3 a5 ...
        0  a0 a2 a4 ...
        0  0  a1 a3 ...

    i.e. entry :math:`(i, j)` (1-indexed) is :math:`a_{2j-i-1}`, with
    :math:`a_k = 0` for :math:`k < 0` or :math:`k > n`.

    :param f: The polynomial.
    :param rows: Number of rows, at least 1.
    :param cols: Number of columns, at least 1.
    :type f: Polynomial or sequence of ascending coefficients
    :type rows: int
    :type cols: int

    :return: The truncation as an object array of ``Fraction``.
    :rtype: numpy.ndarray

    :Example:

    .. code-block:: python

        import hurwitzkit as hk

        hk.hurwitz_truncation([6, 11, 6, 1], 4, 4)
        # [[6, 6, 0, 0], [0, 11, 1, 0], [0, 6, 6, 0], [0, 0, 11, 1]]
    """
    check_sizes(rows=rows, cols=cols)
    f = as_polynomial(f)
    out = _zeros(rows, cols)
    for i in range(1, rows + 1):
        for j in range(1, cols + 1):
            out[i - 1, j - 1] = f.coeff(2 * j - i - 1)
    return out


def j_truncation(c: RationalLike, rows: int, cols: int) -> RationalMatrix:
    """
    Top-left ``rows`` x ``cols`` corner of the infinite factor
    :math:`J(c)`: odd row :math:`2k-1` holds ``c`` in column :math:`2k-1`
    and ``1`` in column :math:`2k`; even row :math:`2k` holds ``1`` in
    column :math:`2k+1`. Entries beyond ``cols`` are cropped.

    :param c: The Routh parameter.
    :param rows: Number of rows, at least 1.
    :param cols: Number of columns, at least 1.
    :type c: Rational-like
    :type rows: int
    :type cols: int

    :return: The truncation as an object array of ``Fraction``.
    :rtype: numpy.ndarray
    """
    check_sizes(rows=rows, cols=cols)
    c = to_fraction(c)
    out = _zeros(rows, cols)
    for i in range(1, rows + 1):
        if i % 2 == 1:
            if i <= cols:
                out[i - 1, i - 1] = c
            if i + 1 <= cols:
                out[i - 1, i] = Fraction(1)
        elif i + 1 <= cols:
            out[i - 1, i] = Fraction(1)
    return out


def _j_times(c: Fraction, right: RationalMatrix) -> RationalMatrix:
    # Equals j_truncation(c, r - 1, r) @ right for r = right.shape[0]; row i
    # of J(c) reads only rows i and i + 1 of its right neighbour
    r, cols = right.shape
    out = _zeros(r - 1, cols)
    for i in range(r - 1):
        if i % 2 == 0:
            out[i, :] = c * right[i, :] + right[i + 1, :]
        else:
            out[i, :] = right[i + 1, :]
    return out


def verify_step_factorization(
    f: PolynomialLike,
    rows: int,
    cols: int,
    c: Optional[RationalLike] = None,
) -> bool:
    """
    Check the one-step identity :math:`H(f) = J(c) H(\\tilde f)` on a
    finite truncation: the ``rows`` x ``cols`` corner of :math:`H(f)`
    must equal ``j_truncation(c, rows, rows + 1)`` times
    ``hurwitz_truncation(f_tilde, rows + 1, cols)`` exactly.

    :param f: Polynomial on which :func:`routh_step` succeeds.
    :param rows: Number of rows, at least 1.
    :param cols: Number of columns, at least 1.
    :param c:
        Default ``None``. Overrides the computed Routh parameter in the
        :math:`J` factor, e.g. to confirm a perturbed parameter breaks the
        identity.
    :type f: Polynomial or sequence of ascending coefficients
    :type rows: int
    :type cols: int
    :type c: Rational-like or None

    :return: Whether the truncated identity holds entrywise.
    :rtype: bool
    """
    check_sizes(rows=rows, cols=cols)
    f = as_polynomial(f)
    step_c, f_tilde = routh_step(f)
    if c is not None:
        step_c = to_fraction(c)
    product = j_truncation(step_c, rows, rows + 1) @ hurwitz_truncation(
        f_tilde, rows + 1, cols
    )
    return bool(np.array_equal(hurwitz_truncation(f, rows, cols), product))


def factorization_product(chain, rows: int, cols: int) -> RationalMatrix:
    """
    The ``rows`` x ``cols`` corner of :math:`J(c_1) \\cdots J(c_n) H(b)`.
    Factor ``k`` is truncated to ``(rows + k - 1) x (rows + k)`` and
    :math:`H(b)` to ``(rows + n) x cols``, which reproduces the infinite
    product exactly.
    """
    check_sizes(rows=rows, cols=cols)
    n = len(chain.cs)
    product = hurwitz_truncation(poly_new([chain.terminal]), rows + n, cols)
    for c in reversed(chain.cs):
        product = _j_times(c, product)
    return product


def verify_full_factorization(f: PolynomialLike, rows: int, cols: int) -> bool:
    """
    Check :math:`H(f) = J(c_1) \\cdots J(c_n) H(b)` on the ``rows`` x
    ``cols`` corner, with the parameters taken from :func:`routh_chain`.

    :param f: Polynomial with :math:`f(0) > 0` and a complete Routh chain.
    :param rows: Number of rows, at least 1.
    :param cols: Number of columns, at least 1.
    :type f: Polynomial or sequence of ascending coefficients
    :type rows: int
    :type cols: int

    :return: Whether the truncated factorization holds entrywise.
    :rtype: bool

    :raises RouthChainError: If the Routh chain cannot be formed.

    :Example:

    .. code-block:: python

        import hurwitzkit as hk

        hk.verify_full_factorization([6, 11, 6, 1], 6, 6)  # True
    """
    f = as_polynomial(f)
    chain = routh_chain(f)
    if isinstance(chain, RouthFailure):
        raise RouthChainError(chain)
    product = factorization_product(chain, rows, cols)
    return bool(np.array_equal(hurwitz_truncation(f, rows, cols), product))


def _integer_rows(matrix) -> tuple[list[list[int]], list[int]]:
    # Scale every row by the lcm of its denominators; each scale is positive
    rows, scales = [], []
    for row in matrix:
        row = [to_fraction(x) for x in row]
        scale = common_denominator(row)
        rows.append([int(x * scale) for x in row])
        scales.append(scale)
    return rows, scales


def _bareiss(a: list) -> int:
    # Fraction-free elimination on an integer matrix; a is modified in place
    n = len(a)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pivot - aik * row_k[j]) // prev
        prev = pivot
    return sign * a[n - 1][n - 1]


def determinant(matrix) -> Fraction:
    """
    Exact determinant of a square rational matrix. Rows are scaled to
    integers and reduced by Bareiss fraction-free elimination; zero pivots
    are handled by row swaps with the sign tracked.

    :param matrix: Square matrix of rationals.
    :type matrix: numpy.ndarray or nested sequence

    :return: The determinant.
    :rtype: Fraction
    """
    matrix = np.asarray(matrix, dtype=object)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise ValueError("Determinants need a square matrix.")
    rows, scales = _integer_rows(matrix)
    return Fraction(_bareiss(rows), math.prod(scales))


def leading_principal_minors(f: PolynomialLike, k: int) -> MinorSequence:
    """
    Leading principal minors :math:`\\Delta_1, \\ldots, \\Delta_k` of the
    Hurwitz matrix :math:`H(f)`, computed exactly.

    :param f: The polynomial.
    :param k: Number of minors, at least 1.
    :type f: Polynomial or sequence of ascending coefficients
    :type k: int

    :return: The minors in order.
    :rtype: MinorSequence

    :Example:

    .. code-block:: python

        import hurwitzkit as hk

        hk.leading_principal_minors([6, 11, 6, 1], 4).values
        # (6, 66, 360, 360)
    """
    check_sizes(k=k)
    h = hurwitz_truncation(f, k, k)
    return MinorSequence(
        tuple(determinant(h[:j, :j]) for j in range(1, k + 1))
    )


def minor_criterion(f: PolynomialLike) -> StabilityReport:
    """
    Decide stability by the Hurwitz minors: :math:`f` of degree :math:`n`
    with :math:`f(0) > 0` is stable if and only if
    :math:`\\Delta_1, \\ldots, \\Delta_{n+1}` are all positive. The
    factorization clause (a full Routh chain with positive parameters) is
    evaluated independently and stored in the witness; a mismatch between
    the two clauses raises a warning.

    :param f: A nonzero polynomial. A negative constant term is handled by
        analysing :math:`-f`.
    :type f: Polynomial or sequence of ascending coefficients

    :return: Report whose witness is the ``MinorSequence``.
    :rtype: StabilityReport

    :Example:

    .. code-block:: python

        import hurwitzkit as hk

        hk.minor_criterion([1, -1, 1]).witness.values  # (1, -1, -1)
    """
    f = as_polynomial(f)
    if f.is_zero:
        raise ValueError("Stability is undefined for the zero polynomial.")
    f, notes = normalize_sign(f)
    minors = leading_principal_minors(f, f.degree + 1).values
    positive = all(m > 0 for m in minors)

    chain = routh_chain(f)
    factorization_holds = (
        not isinstance(chain, RouthFailure) and chain.all_positive
    )
    if positive != factorization_holds:
        warnings.warn(
            "Hurwitz minors and Routh factorization disagree for "
            f"{f}; this indicates an arithmetic defect."
        )
    if isinstance(chain, RouthFailure) and (
        chain.reason is FailureReason.NONPOSITIVE_CONSTANT_TERM
    ):
        notes += ("root at the origin: f(0) = 0",)

    verdict = Verdict.STABLE if positive else Verdict.NOT_STABLE
    return StabilityReport(
        verdict,
        Method.MINORS,
        MinorSequence(minors, factorization_holds),
        notes,
    )


def all_minors_nonnegative(matrix, max_order: int) -> TNNResult:
    """
    Brute-force total nonnegativity check: enumerate every
    :math:`r \\times r` minor for :math:`r = 1, \\ldots,` ``max_order``
    and stop at the first negative one. The cost grows combinatorially in
    ``max_order``.

    :param matrix: Rational matrix.
    :param max_order: Largest minor order, at most ``min(rows, cols)``.
    :type matrix: numpy.ndarray or nested sequence
    :type max_order: int

    :return:
        ``TNNResult`` with ``ok`` set when every minor is nonnegative,
        otherwise the first violating minor as ``(rows, cols, value)``
        with 1-indexed tuples.
    :rtype: TNNResult

    :Example:

    .. code-block:: python

        import hurwitzkit as hk

        h = hk.hurwitz_truncation([6, 11, 6, 1], 6, 6)
        hk.all_minors_nonnegative(h, 3).ok  # True
    """
    matrix = np.asarray(matrix, dtype=object)
    if matrix.ndim != 2:
        raise ValueError("Total nonnegativity needs a 2-D matrix.")
    n_rows, n_cols = matrix.shape
    check_sizes(max_order=max_order)
    if max_order > min(n_rows, n_cols):
        raise ValueError(
            f"'max_order' ({max_order}) cannot exceed min(rows, cols) "
            f"({min(n_rows, n_cols)})."
        )
    total = sum(
        math.comb(n_rows, r) * math.comb(n_cols, r)
        for r in range(1, max_order + 1)
    )
    if total > TNN_WARN_COUNT:
        warnings.warn(
            f"Enumerating {total} minors; this may take a long time. "
            "Lower 'max_order' or the truncation size."
        )

    int_rows, scales = _integer_rows(matrix)
    checked = 0
    for r in range(1, max_order + 1):
        for row_idx in combinations(range(n_rows), r):
            sub_rows = [int_rows[i] for i in row_idx]
            for col_idx in combinations(range(n_cols), r):
                sub = [[row[j] for j in col_idx] for row in sub_rows]
                value = _bareiss(sub)
                checked += 1
                if value < 0:
                    scale = math.prod(scales[i] for i in row_idx)
                    logger.debug("Negative minor after %d checks", checked)
                    return TNNResult(
                        False,
                        (
                            tuple(i + 1 for i in row_idx),
                            tuple(j + 1 for j in col_idx),
                            Fraction(value, scale),
                        ),
                        checked,
                    )
    return TNNResult(True, None, checked)

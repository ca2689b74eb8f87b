import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .poly import (
    Polynomial,
    PolynomialLike,
    as_polynomial,
    cauchy_bound,
    derivative,
    eval_rational,
    even_odd_split,
    multiply_by_x,
    poly_add,
    poly_divmod,
    poly_gcd,
    poly_scale,
    square_free_decomposition,
    square_free_part,
    substitute_neg_x_squared,
)
from .routh import Method, StabilityReport, Verdict, normalize_sign
from .utils import RationalLike, to_fraction

logger = logging.getLogger(__name__)

MAX_REFINEMENTS = 10_000

# Multipliers applied to z0 when q vanishes at z0^2
_NUDGES = (
    Fraction(1),
    Fraction(3, 2),
    Fraction(5, 7),
    Fraction(7, 4),
    Fraction(9, 11),
    Fraction(11, 6),
    Fraction(13, 17),
    Fraction(15, 7),
    Fraction(17, 19),
)


@dataclass(frozen=True)
class RootIsolation:
    """
    Disjoint half-open intervals ``(a, b]``, sorted ascending, each
    holding exactly one real root, with the root's multiplicity.
    """

    intervals: tuple
    multiplicities: tuple

    @property
    def count(self) -> int:
        return len(self.intervals)

    @property
    def total(self) -> int:
        return sum(self.multiplicities)


@dataclass(frozen=True)
class InterlacingReport:
    """
    Exact check of the even/odd parts :math:`(p, q)` of a polynomial: all
    zeros real, simple and negative, strictly interlacing with the
    rightmost zero belonging to :math:`p`, :math:`p(0) q(0) > 0` and
    :math:`\\gcd(p, q) = 1`. ``verdict`` is the conjunction of the flags.
    """

    p_roots: RootIsolation
    q_roots: RootIsolation
    all_real: bool
    all_negative: bool
    all_simple: bool
    interlaced: bool
    rightmost_is_p: bool
    sign_condition: bool
    coprime: bool
    verdict: bool


@dataclass(frozen=True)
class SubstitutedInterlacing:
    """
    Roots of :math:`p(-x^2)` and :math:`x q(-x^2)`: both real and simple,
    coprime, and strictly alternating.
    """

    even_roots: RootIsolation
    odd_roots: RootIsolation
    simple_real: bool
    coprime: bool
    interlaced: bool


@dataclass(frozen=True)
class ConditionBWitness:
    interlacing: Optional[Union[InterlacingReport, SubstitutedInterlacing]]
    phase_sign: Optional[int]


def sturm_sequence(g: PolynomialLike) -> list[Polynomial]:
    """
    Canonical Sturm chain :math:`g_0 = g`, :math:`g_1 = g'`,
    :math:`g_{k+1} = -\\operatorname{rem}(g_{k-1}, g_k)`, ending at a
    nonzero constant or at :math:`\\gcd(g, g')` up to sign.

    :param g: A nonzero polynomial.
    :type g: Polynomial or sequence of ascending coefficients

    :return: The chain, starting with ``g`` itself.
    :rtype: list[Polynomial]

    :Example:

    .. code-block:: python

        import hurwitzkit as hk

        [str(s) for s in hk.sturm_sequence([-2, 0, 1])]
        # ['-2 + x^2', '2x', '2']
    """
    g = as_polynomial(g)
    if g.is_zero:
        raise ValueError("The zero polynomial has no Sturm sequence.")
    chain = [g]
    dg = derivative(g)
    if dg.is_zero:
        return chain
    chain.append(dg)
    while True:
        rem = poly_divmod(chain[-2], chain[-1])[1]
        if rem.is_zero:
            return chain
        chain.append(-rem)


def sign_variations(chain: list, x: RationalLike) -> int:
    """Sign changes along ``chain`` evaluated at ``x``, zeros skipped."""
    values = [eval_rational(g, x) for g in chain]
    signs = [v > 0 for v in values if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _half_open_count(chain: list, a: Fraction, b: Fraction) -> int:
    # For a square-free chain head, V(a) - V(b) counts roots in (a, b]
    return sign_variations(chain, a) - sign_variations(chain, b)


def count_real_roots(
    g: PolynomialLike,
    a: RationalLike,
    b: RationalLike,
    closed_right: bool = False,
) -> int:
    """
    Number of distinct real roots of ``g`` in the open interval
    :math:`(a, b)`, or in :math:`(a, b]` when ``closed_right`` is set, by
    Sturm sign variations. The chain is built on the square-free part of
    ``g``, so roots at the endpoints and multiple roots are handled
    exactly.

    :param g: A nonzero polynomial.
    :param a: Left endpoint.
    :param b: Right endpoint, greater than ``a``.
    :param closed_right: Default ``False``. Include ``b`` itself.
    :type g: Polynomial or sequence of ascending coefficients
    :type a: Rational-like
    :type b: Rational-like
    :type closed_right: bool

    :return: The number of distinct real roots.
    :rtype: int

    :Example:

    .. code-block:: python

        import hurwitzkit as hk

        hk.count_real_roots([-2, 0, 1], 0, 2)  # 1
    """
    g = as_polynomial(g)
    if g.is_zero:
        raise ValueError("The zero polynomial has infinitely many roots.")
    a, b = to_fraction(a), to_fraction(b)
    if a >= b:
        raise ValueError("The interval needs a < b.")
    s = square_free_part(g)
    count = _half_open_count(sturm_sequence(s), a, b)
    if not closed_right and eval_rational(s, b) == 0:
        count -= 1
    return count


def _isolate(chain: list, lo: Fraction, hi: Fraction) -> list:
    out = []
    stack = [(lo, hi)]
    while stack:
        a, b = stack.pop()
        n = _half_open_count(chain, a, b)
        if n == 0:
            continue
        if n == 1:
            out.append((a, b))
            continue
        mid = (a + b) / 2
        stack.append((mid, b))
        stack.append((a, mid))
    return out


def isolate_real_roots(g: PolynomialLike) -> RootIsolation:
    """
    Isolate the distinct real roots of ``g`` by recursive bisection of
    :math:`(-B, B]`, with :math:`B` the Cauchy bound, until every interval
    holds exactly one root of the square-free part. Multiplicities come
    from the square-free decomposition of ``g``.

    :param g: A nonzero polynomial.
    :type g: Polynomial or sequence of ascending coefficients

    :return: Sorted, disjoint isolating intervals ``(a, b]``.
    :rtype: RootIsolation

    :Example:

    .. code-block:: python

        import hurwitzkit as hk

        iso = hk.isolate_real_roots([1, 2, 1])
        iso.count, iso.multiplicities  # 1, (2,)
    """
    g = as_polynomial(g)
    if g.is_zero:
        raise ValueError("The zero polynomial has infinitely many roots.")
    s = square_free_part(g)
    if s.degree == 0:
        return RootIsolation((), ())
    bound = cauchy_bound(s)
    intervals = _isolate(sturm_sequence(s), -bound, bound)

    factors = [
        (sturm_sequence(factor), i)
        for factor, i in square_free_decomposition(g)
    ]
    multiplicities = []
    for a, b in intervals:
        multiplicities.append(
            next(i for chain, i in factors if _half_open_count(chain, a, b))
        )
    return RootIsolation(tuple(intervals), tuple(multiplicities))


def refine_root(
    g: PolynomialLike,
    interval: tuple,
    width: RationalLike = Fraction(1, 10**12),
) -> tuple:
    """
    Bisect an isolating interval ``(a, b]`` of ``g`` until it is at most
    ``width`` wide.

    :param g: A nonzero polynomial.
    :param interval: Interval holding exactly one distinct root of ``g``.
    :param width: Default ``1e-12`` as an exact fraction. Target width.
    :type g: Polynomial or sequence of ascending coefficients
    :type interval: tuple
    :type width: Rational-like

    :return: The refined interval ``(a, b)``.
    :rtype: tuple[Fraction, Fraction]
    """
    a, b = (to_fraction(x) for x in interval)
    width = to_fraction(width)
    if width <= 0:
        raise ValueError("'width' must be positive.")
    chain = sturm_sequence(square_free_part(as_polynomial(g)))
    if _half_open_count(chain, a, b) != 1:
        raise ValueError(f"({a}, {b}] does not isolate a single root.")
    while b - a > width:
        mid = (a + b) / 2
        if _half_open_count(chain, a, mid) == 1:
            b = mid
        else:
            a = mid
    return a, b


def real_root_count(g: PolynomialLike) -> int:
    """Number of real roots of ``g`` counted with multiplicity."""
    g = as_polynomial(g)
    if g.is_zero:
        raise ValueError("The zero polynomial has infinitely many roots.")
    total = 0
    for factor, i in square_free_decomposition(g):
        bound = cauchy_bound(factor)
        total += i * _half_open_count(sturm_sequence(factor), -bound, bound)
    return total


def _no_nonnegative_roots(g: Polynomial) -> bool:
    if eval_rational(g, 0) == 0:
        return False
    s = square_free_part(g)
    if s.degree == 0:
        return True
    chain = sturm_sequence(s)
    return _half_open_count(chain, Fraction(0), cauchy_bound(s)) == 0


def _separate(isolations: dict) -> list:
    """
    Refine isolating intervals of several coprime polynomials until no two
    overlap. Returns ``[lo, hi, label, index]`` items sorted ascending.
    """
    chains = {}
    items = []
    for label, (g, iso) in isolations.items():
        chains[label] = sturm_sequence(square_free_part(g))
        for index, (a, b) in enumerate(iso.intervals):
            items.append([a, b, label, index])

    for _ in range(MAX_REFINEMENTS):
        items.sort(key=lambda item: item[0])
        overlap = False
        for left, right in zip(items, items[1:]):
            if right[0] < left[1]:
                overlap = True
                for item in (left, right):
                    chain = chains[item[2]]
                    mid = (item[0] + item[1]) / 2
                    if _half_open_count(chain, item[0], mid) == 1:
                        item[1] = mid
                    else:
                        item[0] = mid
        if not overlap:
            return items
    raise RuntimeError("Root intervals could not be separated.")


def _refined(items: list, label: str, iso: RootIsolation) -> RootIsolation:
    own = [item for item in items if item[2] == label]
    return RootIsolation(
        tuple((item[0], item[1]) for item in own),
        tuple(iso.multiplicities[item[3]] for item in own),
    )


def _alternates(labels: list) -> bool:
    return all(a != b for a, b in zip(labels, labels[1:]))


def interlacing_check(
    p: PolynomialLike, q: PolynomialLike
) -> InterlacingReport:
    """
    Check that the zeros of :math:`p` and :math:`q` are real, simple and
    negative, strictly interlace with the rightmost zero belonging to
    :math:`p`, that :math:`p(0) q(0) > 0` and that :math:`p, q` are
    coprime. All decisions are exact: isolating intervals are refined
    until those of :math:`p` and :math:`q` are pairwise disjoint.

    :param p: Even part, nonzero.
    :param q: Odd part, nonzero.
    :type p: Polynomial or sequence of ascending coefficients
    :type q: Polynomial or sequence of ascending coefficients

    :return: The individual flags and their conjunction.
    :rtype: InterlacingReport

    :Example:

    .. code-block:: python

        import hurwitzkit as hk

        hk.interlacing_check([6, 6], [11, 1]).verdict  # True
        hk.interlacing_check([2, 3, 1], [3, 1]).interlaced  # False
    """
    p, q = as_polynomial(p), as_polynomial(q)
    if p.is_zero or q.is_zero:
        raise ValueError("Interlacing needs two nonzero polynomials.")

    coprime = poly_gcd(p, q).degree == 0
    p_iso, q_iso = isolate_real_roots(p), isolate_real_roots(q)
    all_real = p_iso.total == p.degree and q_iso.total == q.degree
    multiplicities = p_iso.multiplicities + q_iso.multiplicities
    all_simple = all(m == 1 for m in multiplicities)
    all_negative = _no_nonnegative_roots(p) and _no_nonnegative_roots(q)
    sign_condition = eval_rational(p, 0) * eval_rational(q, 0) > 0

    if coprime:
        items = _separate({"p": (p, p_iso), "q": (q, q_iso)})
        labels = [item[2] for item in items]
        interlaced = _alternates(labels)
        rightmost_is_p = not labels or labels[-1] == "p"
        p_iso, q_iso = _refined(items, "p", p_iso), _refined(items, "q", q_iso)
    else:
        # A shared root rules out strict interlacing
        interlaced = False
        rightmost_is_p = False

    flags = (
        all_real,
        all_negative,
        all_simple,
        interlaced,
        rightmost_is_p,
        sign_condition,
        coprime,
    )
    logger.debug("Interlacing flags for (%s, %s): %s", p, q, flags)
    return InterlacingReport(p_iso, q_iso, *flags, all(flags))


def phase_sign(
    f: PolynomialLike, z0: RationalLike = 1, max_nudges: int = 8
) -> Optional[int]:
    """
    Sign of :math:`p(z_0^2) / (z_0 q(z_0^2))` for real :math:`z_0 > 0`.
    If :math:`q(z_0^2) = 0` the point is nudged along a fixed rational
    schedule (:math:`z_0 \\cdot 1, 3/2, 5/7, \\ldots`).

    :param f: A nonzero polynomial.
    :param z0: Default ``1``. Positive evaluation point.
    :param max_nudges: Default ``8``. Number of alternative points tried.
    :type f: Polynomial or sequence of ascending coefficients
    :type z0: Rational-like
    :type max_nudges: int

    :return:
        ``1``, ``-1`` or ``0``; ``None`` if :math:`q` vanishes at every
        attempted point.
    :rtype: int or None
    """
    pair = even_odd_split(as_polynomial(f))
    z0 = to_fraction(z0)
    if z0 <= 0:
        raise ValueError("'z0' must be positive.")
    if pair.q.is_zero:
        return None
    for ratio in _NUDGES[: max_nudges + 1]:
        z = z0 * ratio
        qv = eval_rational(pair.q, z * z)
        if qv != 0:
            value = eval_rational(pair.p, z * z) / (z * qv)
            return (value > 0) - (value < 0)
    return None


def condition_b(f: PolynomialLike) -> StabilityReport:
    """
    Hermite-Biehler test: :math:`f = p(x^2) + x q(x^2)` is stable if and
    only if :math:`p` and :math:`q` have only simple, negative,
    interlacing zeros with the rightmost zero belonging to :math:`p`, and
    :math:`p(0) q(0) > 0`. The phase sign at :math:`z_0 = 1` is attached
    to the witness as corroboration; it does not enter the verdict.

    :param f: A nonzero polynomial. A nonzero constant is reported stable.
    :type f: Polynomial or sequence of ascending coefficients

    :return: Report whose witness is a ``ConditionBWitness``.
    :rtype: StabilityReport

    :Example:

    .. code-block:: python

        import hurwitzkit as hk

        hk.condition_b([6, 11, 6, 1]).is_stable  # True
        hk.condition_b([1, 1, 1, 1]).is_stable  # False
    """
    f = as_polynomial(f)
    if f.is_zero:
        raise ValueError("Stability is undefined for the zero polynomial.")
    f, notes = normalize_sign(f)
    if f.degree == 0:
        notes += ("vacuous: a nonzero constant has no roots",)
        return StabilityReport(
            Verdict.STABLE,
            Method.HERMITE_BIEHLER,
            ConditionBWitness(None, None),
            notes,
        )

    pair = even_odd_split(f)
    sign = phase_sign(f)
    if pair.p.is_zero or pair.q.is_zero:
        part = "p" if pair.p.is_zero else "q"
        notes += (f"{part} is the zero polynomial",)
        return StabilityReport(
            Verdict.NOT_STABLE,
            Method.HERMITE_BIEHLER,
            ConditionBWitness(None, sign),
            notes,
        )

    report = interlacing_check(pair.p, pair.q)
    verdict = Verdict.STABLE if report.verdict else Verdict.NOT_STABLE
    return StabilityReport(
        verdict, Method.HERMITE_BIEHLER, ConditionBWitness(report, sign), notes
    )


def condition_b_literal(f: PolynomialLike) -> StabilityReport:
    """
    Hermite-Biehler test in its substituted form: :math:`p(-x^2)` and
    :math:`x q(-x^2)` have simple real interlacing roots and
    :math:`p(z_0^2) / (z_0 q(z_0^2)) > 0` for some real :math:`z_0 > 0`.
    Equivalent to :func:`condition_b`.

    :param f: A nonzero polynomial. A nonzero constant is reported stable.
    :type f: Polynomial or sequence of ascending coefficients

    :return:
        Report whose witness holds a ``SubstitutedInterlacing`` and the
        phase sign.
    :rtype: StabilityReport
    """
    f = as_polynomial(f)
    if f.is_zero:
        raise ValueError("Stability is undefined for the zero polynomial.")
    f, notes = normalize_sign(f)
    if f.degree == 0:
        notes += ("vacuous: a nonzero constant has no roots",)
        return StabilityReport(
            Verdict.STABLE,
            Method.HERMITE_BIEHLER,
            ConditionBWitness(None, None),
            notes,
        )

    pair = even_odd_split(f)
    sign = phase_sign(f)
    even = substitute_neg_x_squared(pair.p)
    odd = multiply_by_x(substitute_neg_x_squared(pair.q))
    if even.is_zero or odd.is_zero:
        return StabilityReport(
            Verdict.NOT_STABLE,
            Method.HERMITE_BIEHLER,
            ConditionBWitness(None, sign),
            notes,
        )

    coprime = poly_gcd(even, odd).degree == 0
    even_iso, odd_iso = isolate_real_roots(even), isolate_real_roots(odd)
    simple_real = all(
        iso.total == g.degree and all(m == 1 for m in iso.multiplicities)
        for g, iso in ((even, even_iso), (odd, odd_iso))
    )
    interlaced = False
    if coprime:
        items = _separate({"p": (even, even_iso), "q": (odd, odd_iso)})
        interlaced = _alternates([item[2] for item in items])
        even_iso = _refined(items, "p", even_iso)
        odd_iso = _refined(items, "q", odd_iso)

    witness = SubstitutedInterlacing(
        even_iso, odd_iso, simple_real, coprime, interlaced
    )
    ok = simple_real and coprime and interlaced and sign == 1
    verdict = Verdict.STABLE if ok else Verdict.NOT_STABLE
    return StabilityReport(
        verdict,
        Method.HERMITE_BIEHLER,
        ConditionBWitness(witness, sign),
        notes + ("substituted form",),
    )


def combination_real_rooted(
    f: PolynomialLike, lam: RationalLike, mu: RationalLike
) -> bool:
    """
    Whether :math:`g(x) = \\lambda p(-x^2) + \\mu x q(-x^2)` has only real
    roots, i.e. its real-root count with multiplicity equals its degree.
    Every such combination is real-rooted when :math:`f` is stable; no
    claim is made for unstable :math:`f`.

    :param f: A nonzero polynomial.
    :param lam: Weight of :math:`p(-x^2)`.
    :param mu: Weight of :math:`x q(-x^2)`; not both weights zero.
    :type f: Polynomial or sequence of ascending coefficients
    :type lam: Rational-like
    :type mu: Rational-like

    :return: ``True`` if all roots of the combination are real.
    :rtype: bool

    :Example:

    .. code-block:: python

        import hurwitzkit as hk

        hk.combination_real_rooted([6, 11, 6, 1], 0, 1)  # True: 11x - x^3
    """
    lam, mu = to_fraction(lam), to_fraction(mu)
    if lam == 0 and mu == 0:
        raise ValueError("'lam' and 'mu' cannot both be zero.")
    pair = even_odd_split(as_polynomial(f))
    g = poly_add(
        poly_scale(substitute_neg_x_squared(pair.p), lam),
        poly_scale(multiply_by_x(substitute_neg_x_squared(pair.q)), mu),
    )
    if g.is_zero:
        return False
    return real_root_count(g) == g.degree

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

from .utils import RationalLike, to_fraction


@dataclass(frozen=True)
class Polynomial:
    """
    Real polynomial :math:`f(x) = \\sum_j a_j x^j` with exact rational
    coefficients stored in ascending order, so ``coeffs[j]`` is
    :math:`a_j`. Trailing zeros are stripped on construction; the zero
    polynomial is the single coefficient ``0`` with degree 0 and
    ``is_zero`` set.
    """

    coeffs: tuple

    def __post_init__(self):
        if isinstance(self.coeffs, (str, bytes)):
            raise TypeError("Coefficients must be a sequence, not a string.")
        coeffs = [to_fraction(a) for a in self.coeffs]
        if not coeffs:
            raise ValueError("A polynomial needs at least one coefficient.")
        while len(coeffs) > 1 and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, "coeffs", tuple(coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return self.coeffs == (0,)

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1]

    def coeff(self, j: int) -> Fraction:
        """Coefficient of :math:`x^j`, zero outside ``0 .. degree``."""
        if 0 <= j < len(self.coeffs):
            return self.coeffs[j]
        return Fraction(0)

    def __call__(self, x: RationalLike) -> Fraction:
        return eval_rational(self, x)

    def __neg__(self) -> "Polynomial":
        return Polynomial(tuple(-a for a in self.coeffs))

    def __len__(self) -> int:
        return len(self.coeffs)

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        terms = []
        for j, a in enumerate(self.coeffs):
            if a == 0:
                continue
            mag = abs(a)
            if j == 0:
                body = str(mag)
            else:
                power = "x" if j == 1 else f"x^{j}"
                if mag == 1:
                    body = power
                elif mag.denominator == 1:
                    body = f"{mag}{power}"
                else:
                    body = f"({mag}){power}"
            if not terms:
                terms.append(body if a > 0 else f"-{body}")
            else:
                terms.append(f"+ {body}" if a > 0 else f"- {body}")
        return " ".join(terms)


@dataclass(frozen=True)
class EvenOddPair:
    """
    The even and odd parts :math:`(p, q)` of
    :math:`f(x) = p(x^2) + x q(x^2)`.
    """

    p: Polynomial
    q: Polynomial


ZERO = Polynomial((0,))
ONE = Polynomial((1,))


def poly_new(coeffs: Iterable[RationalLike]) -> Polynomial:
    """
    Build a normalized polynomial from ascending coefficients.

    :param coeffs:
        Coefficients :math:`a_0, a_1, \\ldots, a_n`. Integers, ``Fraction``,
        decimal strings, ``"p/q"`` strings and floats are accepted; floats
        are converted exactly.
    :type coeffs: Iterable of rational-like values

    :return: The polynomial with trailing zeros stripped.
    :rtype: Polynomial

    :Example:

    .. code-block:: python

        import hurwitzkit as hk

        hk.poly_new([1, 2, 0]).degree  # 1
    """
    if isinstance(coeffs, (str, bytes)):
        raise TypeError("Coefficients must be a sequence, not a string.")
    return Polynomial(tuple(coeffs))


def even_odd_split(f: Polynomial) -> EvenOddPair:
    """
    Split :math:`f` into the polynomials :math:`p, q` with
    :math:`f(x) = p(x^2) + x q(x^2)`, i.e. ``p.coeffs[k] = a_{2k}`` and
    ``q.coeffs[k] = a_{2k+1}``.

    :param f: A nonzero polynomial.
    :type f: Polynomial

    :return: The even/odd pair.
    :rtype: EvenOddPair

    :Example:

    .. code-block:: python

        import hurwitzkit as hk

        pair = hk.even_odd_split(hk.poly_new([6, 11, 6, 1]))
        pair.p.coeffs, pair.q.coeffs  # (6, 6), (11, 1)
    """
    if f.is_zero:
        raise ValueError("Cannot split the zero polynomial.")
    p = f.coeffs[0::2]
    q = f.coeffs[1::2] or (0,)
    return EvenOddPair(Polynomial(p), Polynomial(q))


def recombine(pair: EvenOddPair) -> Polynomial:
    """
    Inverse of :func:`even_odd_split`: interleave ``p`` at even and ``q`` at
    odd powers.
    """
    size = max(2 * len(pair.p), 2 * len(pair.q) + 1)
    coeffs = [Fraction(0)] * size
    coeffs[0::2] = [pair.p.coeff(k) for k in range(len(coeffs[0::2]))]
    coeffs[1::2] = [pair.q.coeff(k) for k in range(len(coeffs[1::2]))]
    return Polynomial(tuple(coeffs))


def eval_rational(f: Polynomial, x: RationalLike) -> Fraction:
    """Exact value :math:`f(x)` by Horner's rule."""
    x = to_fraction(x)
    out = Fraction(0)
    for a in reversed(f.coeffs):
        out = out * x + a
    return out


def poly_add(p: Polynomial, q: Polynomial) -> Polynomial:
    size = max(len(p), len(q))
    return Polynomial(tuple(p.coeff(j) + q.coeff(j) for j in range(size)))


def poly_scale(p: Polynomial, c: RationalLike) -> Polynomial:
    c = to_fraction(c)
    return Polynomial(tuple(c * a for a in p.coeffs))


def sub_scaled(p: Polynomial, c: RationalLike, q: Polynomial) -> Polynomial:
    """
    Exact :math:`p - c q`, the numerator of the reduced odd part in a Routh
    step.

    :param p: Minuend.
    :param c: Rational scale applied to ``q``.
    :param q: Subtrahend.
    :type p: Polynomial
    :type c: Rational-like
    :type q: Polynomial

    :return: The normalized difference.
    :rtype: Polynomial
    """
    return poly_add(p, poly_scale(q, -to_fraction(c)))


def multiply_by_x(g: Polynomial) -> Polynomial:
    if g.is_zero:
        return g
    return Polynomial((0,) + g.coeffs)


def divide_by_x(f: Polynomial) -> Polynomial:
    """
    Shift coefficients down by one index, i.e. :math:`f(x) / x`. The
    constant coefficient must vanish; the zero polynomial maps to itself.

    :raises ValueError: If :math:`f(0) \\neq 0`.
    """
    if f.is_zero:
        return f
    if f.coeffs[0] != 0:
        raise ValueError(
            "Cannot divide by x: the constant coefficient is "
            f"{f.coeffs[0]}, not 0."
        )
    return Polynomial(f.coeffs[1:])


def derivative(g: Polynomial) -> Polynomial:
    if g.degree == 0:
        return ZERO
    return Polynomial(tuple(j * a for j, a in enumerate(g.coeffs) if j > 0))


def monic(g: Polynomial) -> Polynomial:
    if g.is_zero:
        return g
    return poly_scale(g, 1 / g.leading)


def poly_divmod(
    a: Polynomial, b: Polynomial
) -> tuple[Polynomial, Polynomial]:
    """
    Exact long division over the rationals, returning ``(quotient,
    remainder)`` with ``a == quotient * b + remainder`` and
    ``deg remainder < deg b`` (or remainder zero).
    """
    if b.is_zero:
        raise ZeroDivisionError("Polynomial division by zero.")
    rem = list(a.coeffs)
    if a.is_zero or a.degree < b.degree:
        return ZERO, a
    quot = [Fraction(0)] * (a.degree - b.degree + 1)
    for shift in range(a.degree - b.degree, -1, -1):
        top = rem[shift + b.degree] / b.leading
        quot[shift] = top
        if top != 0:
            for j, bj in enumerate(b.coeffs):
                rem[shift + j] -= top * bj
    rest = rem[: b.degree] or [Fraction(0)]
    return Polynomial(tuple(quot)), Polynomial(tuple(rest))


def poly_gcd(p: Polynomial, q: Polynomial) -> Polynomial:
    """
    Monic greatest common divisor via the Euclidean remainder sequence over
    the rationals.

    :param p: First polynomial.
    :param q: Second polynomial. ``p`` and ``q`` cannot both be zero.
    :type p: Polynomial
    :type q: Polynomial

    :return: The monic gcd; ``1`` for coprime inputs.
    :rtype: Polynomial

    :Example:

    .. code-block:: python

        import hurwitzkit as hk

        hk.poly_gcd(hk.poly_new([-1, 0, 1]), hk.poly_new([1, 1]))  # x + 1
    """
    if p.is_zero and q.is_zero:
        raise ValueError("gcd(0, 0) is undefined.")
    a, b = p, q
    while not b.is_zero:
        a, b = b, poly_divmod(a, b)[1]
    return monic(a)


def substitute_neg_x_squared(g: Polynomial) -> Polynomial:
    """
    Return :math:`g(-x^2)`: coefficient ``k`` of ``g`` moves to index
    ``2k`` with sign :math:`(-1)^k`.
    """
    coeffs = [Fraction(0)] * (2 * len(g) - 1)
    for k, a in enumerate(g.coeffs):
        coeffs[2 * k] = -a if k % 2 else a
    return Polynomial(tuple(coeffs))


def square_free_decomposition(
    g: Polynomial,
) -> list[tuple[Polynomial, int]]:
    """
    Yun's square-free decomposition. Returns ``[(s_i, i), ...]`` with
    monic, pairwise coprime, square-free ``s_i`` of positive degree such
    that ``g`` is a constant times the product of ``s_i ** i``. Constants
    decompose to the empty list.
    """
    if g.is_zero:
        raise ValueError(
            "The zero polynomial has no square-free decomposition."
        )
    if g.degree == 0:
        return []
    dg = derivative(g)
    a0 = poly_gcd(g, dg)
    b = poly_divmod(g, a0)[0]
    c = poly_divmod(dg, a0)[0]
    d = poly_add(c, -derivative(b))
    out = []
    i = 1
    while b.degree > 0:
        a = poly_gcd(b, d)
        if a.degree > 0:
            out.append((a, i))
        b = poly_divmod(b, a)[0]
        c = poly_divmod(d, a)[0]
        d = poly_add(c, -derivative(b))
        i += 1
    return out


def square_free_part(g: Polynomial) -> Polynomial:
    """Product of the distinct monic irreducible factors of ``g``."""
    if g.degree == 0:
        return ONE
    return monic(poly_divmod(g, poly_gcd(g, derivative(g)))[0])


def cauchy_bound(g: Polynomial) -> Fraction:
    """
    Exact Cauchy bound :math:`1 + \\max_{j<n} |a_j / a_n|`; every complex
    root of ``g`` has modulus strictly below it.
    """
    if g.degree == 0:
        return Fraction(1)
    return 1 + max(abs(a / g.leading) for a in g.coeffs[:-1])


def common_denominator(values: Iterable[Fraction]) -> int:
    out = 1
    for v in values:
        out = math.lcm(out, Fraction(v).denominator)
    return out


PolynomialLike = Union[Polynomial, Iterable[RationalLike]]


def as_polynomial(f: PolynomialLike) -> Polynomial:
    """Accept either a ``Polynomial`` or a plain coefficient sequence."""
    if isinstance(f, Polynomial):
        return f
    return poly_new(f)

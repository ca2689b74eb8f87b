import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Any, Optional, Union

from .poly import (
    EvenOddPair,
    Polynomial,
    PolynomialLike,
    as_polynomial,
    divide_by_x,
    even_odd_split,
    recombine,
    sub_scaled,
)

logger = logging.getLogger(__name__)


class Verdict(str, Enum):
    STABLE = "Stable"
    NOT_STABLE = "NotStable"
    BOUNDARY = "Boundary"


class Method(str, Enum):
    ROUTH = "Routh"
    MINORS = "Minors"
    HERMITE_BIEHLER = "HermiteBiehler"
    ORACLE = "Oracle"


class FailureReason(str, Enum):
    NONPOSITIVE_C = "NonpositiveC"
    DEGENERATE_STEP = "DegenerateStep"
    NONPOSITIVE_CONSTANT_TERM = "NonpositiveConstantTerm"


@dataclass(frozen=True)
class RouthFailure:
    """First failing Routh step (1-indexed) and the reason it failed."""

    reason: FailureReason
    step: Optional[int] = None

    def __str__(self) -> str:
        if self.step is None:
            return self.reason.value
        return f"{self.reason.value}({self.step})"


@dataclass(frozen=True)
class RouthChain:
    """
    Parameters :math:`c_1, \\ldots, c_n` and terminal constant :math:`b` of
    the factorization :math:`H(f) = J(c_1) \\cdots J(c_n) H(b)`.
    """

    cs: tuple
    terminal: Fraction

    @property
    def all_positive(self) -> bool:
        return all(c > 0 for c in self.cs) and self.terminal > 0


@dataclass(frozen=True)
class StabilityReport:
    """
    Verdict of one stability test plus its witness: a ``RouthChain`` or
    ``RouthFailure`` for the Routh recursion, a ``MinorSequence`` for the
    minor criterion, a ``ConditionBWitness`` for Hermite-Biehler.
    """

    verdict: Verdict
    method: Method
    witness: Any = None
    notes: tuple = ()

    @property
    def is_stable(self) -> bool:
        return self.verdict is Verdict.STABLE


class DegenerateStepError(ValueError):
    """Raised by :func:`routh_step` when :math:`q(0) = 0`."""

    def __init__(self, step: Optional[int] = None):
        self.step = step
        where = "" if step is None else f" at step {step}"
        super().__init__(
            f"Degenerate Routh step{where}: q(0) = 0, so c = p(0)/q(0) is "
            "undefined and the polynomial cannot be stable."
        )


class RouthChainError(ValueError):
    """Raised when a full Routh chain is required but cannot be formed."""

    def __init__(self, failure: RouthFailure):
        self.failure = failure
        super().__init__(f"Routh chain failed: {failure}.")


def routh_step(f: PolynomialLike) -> tuple[Fraction, Polynomial]:
    """
    One Routh reduction :math:`f \\mapsto \\tilde f`. With
    :math:`f(x) = p(x^2) + x q(x^2)`, set :math:`c = p(0) / q(0)`,
    :math:`\\tilde p = q` and :math:`\\tilde q = (p - c q) / x`. Then
    :math:`f` is stable if and only if :math:`c > 0` and
    :math:`\\tilde f = \\tilde p(x^2) + x \\tilde q(x^2)` is stable.

    :param f:
        Polynomial of degree at least 1 with :math:`f(0) \\neq 0`.
    :type f: Polynomial or sequence of ascending coefficients

    :return: The tuple ``(c, f_tilde)``.
    :rtype: tuple[Fraction, Polynomial]

    :raises DegenerateStepError: If :math:`q(0) = 0`.
    :raises ValueError: If ``f`` is constant or has a root at the origin.

    :Example:

    .. code-block:: python

        import hurwitzkit as hk

        c, f_tilde = hk.routh_step([6, 11, 6, 1])
        # c == Fraction(6, 11), f_tilde == 11 + (60/11)x + x^2
    """
    f = as_polynomial(f)
    if f.degree < 1:
        raise ValueError("A Routh step needs a polynomial of degree >= 1.")
    if f.coeffs[0] == 0:
        raise ValueError("f(0) = 0: the polynomial has a root at the origin.")
    pair = even_odd_split(f)
    if pair.q.coeffs[0] == 0:
        raise DegenerateStepError()
    c = pair.p.coeffs[0] / pair.q.coeffs[0]
    q_tilde = divide_by_x(sub_scaled(pair.p, c, pair.q))
    f_tilde = recombine(EvenOddPair(pair.q, q_tilde))
    return c, f_tilde


def normalize_sign(f: Polynomial) -> tuple[Polynomial, tuple[str, ...]]:
    """Return ``f`` or ``-f`` so that the constant term is nonnegative."""
    if f.coeffs[0] < 0:
        return -f, ("sign-normalized: f(0) < 0, analysed -f",)
    return f, ()


def routh_sequence(f: PolynomialLike) -> list[tuple[Fraction, Polynomial]]:
    """
    All well-formed Routh steps of ``f`` in order, as ``(c, f_tilde)``
    pairs. Stops at degree 0 or before the first degenerate step; the sign
    of each ``c`` is not inspected.
    """
    f = as_polynomial(f)
    out = []
    while f.degree > 0 and f.coeffs[0] != 0:
        try:
            c, f_tilde = routh_step(f)
        except DegenerateStepError:
            break
        out.append((c, f_tilde))
        f = f_tilde
    return out


def routh_chain(f: PolynomialLike) -> Union[RouthChain, RouthFailure]:
    """
    Iterate :func:`routh_step` down to a degree-0 polynomial and collect
    the parameters :math:`c_1, \\ldots, c_n` and the terminal constant
    :math:`b`. Nonpositive parameters are recorded, not rejected; only a
    malformed step ends the chain.

    :param f: Polynomial with :math:`f(0) > 0`.
    :type f: Polynomial or sequence of ascending coefficients

    :return:
        A ``RouthChain`` of length ``deg f`` on success, otherwise a
        ``RouthFailure`` naming the first failing step.
    :rtype: RouthChain or RouthFailure

    :Example:

    .. code-block:: python

        import hurwitzkit as hk

        hk.routh_chain([6, 11, 6, 1])
        # RouthChain(cs=(6/11, 121/60, 60/11), terminal=1)
    """
    f = as_polynomial(f)
    if f.is_zero:
        raise ValueError("The zero polynomial has no Routh chain.")
    if f.coeffs[0] <= 0:
        return RouthFailure(FailureReason.NONPOSITIVE_CONSTANT_TERM)

    n = f.degree
    cs = []
    for step in range(1, n + 1):
        try:
            c, f_tilde = routh_step(f)
        except DegenerateStepError:
            return RouthFailure(FailureReason.DEGENERATE_STEP, step)
        if f_tilde.degree != f.degree - 1:
            return RouthFailure(FailureReason.DEGENERATE_STEP, step)
        logger.debug("Routh step %d: c = %s, f~ = %s", step, c, f_tilde)
        cs.append(c)
        f = f_tilde
    return RouthChain(tuple(cs), f.coeffs[0])


def terminal_matches_leading(f: PolynomialLike) -> Optional[bool]:
    """
    Whether the terminal constant :math:`b` of the Routh chain equals the
    leading coefficient :math:`a_n`. ``None`` if the chain cannot be
    formed.
    """
    f = as_polynomial(f)
    chain = routh_chain(f)
    if isinstance(chain, RouthFailure):
        return None
    return chain.terminal == f.leading


def is_stable_routh(f: PolynomialLike) -> StabilityReport:
    """
    Decide Hurwitz stability by the Routh recursion: :math:`f` is stable
    if and only if :math:`f(0) > 0`, every step is well formed and every
    parameter :math:`c_j` is positive. A negative constant term is handled
    by analysing :math:`-f`; a nonzero constant is stable (it has no
    roots at all).

    :param f: A nonzero polynomial.
    :type f: Polynomial or sequence of ascending coefficients

    :return:
        A report whose witness is the full ``RouthChain`` when stable, or
        the first ``RouthFailure`` otherwise.
    :rtype: StabilityReport

    :Example:

    .. code-block:: python

        import hurwitzkit as hk

        hk.is_stable_routh([6, 11, 6, 1]).verdict   # Verdict.STABLE
        hk.is_stable_routh([1, -1, 1]).witness      # NonpositiveC(1)
    """
    f = as_polynomial(f)
    if f.is_zero:
        raise ValueError("Stability is undefined for the zero polynomial.")
    f, notes = normalize_sign(f)

    def not_stable(reason, step=None):
        return StabilityReport(
            Verdict.NOT_STABLE, Method.ROUTH, RouthFailure(reason, step), notes
        )

    if f.coeffs[0] == 0:
        return not_stable(FailureReason.NONPOSITIVE_CONSTANT_TERM)
    if f.degree == 0:
        notes += ("vacuous: a nonzero constant has no roots",)
        return StabilityReport(
            Verdict.STABLE, Method.ROUTH, RouthChain((), f.coeffs[0]), notes
        )

    cs = []
    for step in range(1, f.degree + 1):
        try:
            c, f_tilde = routh_step(f)
        except DegenerateStepError:
            return not_stable(FailureReason.DEGENERATE_STEP, step)
        if c <= 0:
            return not_stable(FailureReason.NONPOSITIVE_C, step)
        if f_tilde.degree != f.degree - 1:
            return not_stable(FailureReason.DEGENERATE_STEP, step)
        cs.append(c)
        f = f_tilde

    if f.coeffs[0] <= 0:
        return not_stable(FailureReason.NONPOSITIVE_C, len(cs))
    return StabilityReport(
        Verdict.STABLE, Method.ROUTH, RouthChain(tuple(cs), f.coeffs[0]), notes
    )

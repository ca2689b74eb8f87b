import logging
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

import numpy as np
from numpy.polynomial import polynomial as P

from .poly import Polynomial, PolynomialLike, as_polynomial
from .routh import Verdict
from .utils import RationalLike, check_sizes, to_fraction

logger = logging.getLogger(__name__)

RESIDUAL_BOUND = 1e-8
FAILURE_BOUND = 1e-4
MAX_POLISH = 50
GRID_DENOMINATOR = 16


@dataclass(frozen=True)
class RootSet:
    """
    Floating-point roots sorted by real then imaginary part, with the
    backward error :math:`|f(z)| / \\sum_j |a_j| |z|^j` of each.
    """

    roots: np.ndarray
    residuals: np.ndarray

    def __len__(self) -> int:
        return len(self.roots)


@dataclass(frozen=True)
class OracleVerdict:
    verdict: Verdict
    margin: float
    tolerance: float


class RootFindingError(RuntimeError):
    """Raised when root polishing cannot reach a usable residual."""

    def __init__(self, message: str, partial: RootSet):
        self.partial = partial
        super().__init__(message)


def _float_coeffs(f: Polynomial) -> np.ndarray:
    c = np.array([float(a) for a in f.coeffs])
    return c / np.abs(c).max()


def _backward_error(c: np.ndarray, z: np.ndarray) -> np.ndarray:
    num = np.abs(P.polyval(z, c))
    scale = P.polyval(np.abs(z), np.abs(c))
    return np.divide(num, scale, out=np.zeros_like(num), where=scale > 0)


def _aberth_step(c: np.ndarray, dc: np.ndarray, z: np.ndarray) -> np.ndarray:
    """One simultaneous Aberth-Ehrlich correction of every root estimate."""
    diff = z[:, None] - z[None, :]
    inv = np.divide(
        1.0, diff, out=np.zeros_like(diff), where=np.abs(diff) > 0
    )
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = P.polyval(z, c) / P.polyval(z, dc)
        delta = ratio / (1.0 - ratio * inv.sum(axis=1))
    return z - np.where(np.isfinite(delta), delta, 0.0)


def all_roots(f: PolynomialLike, max_iter: int = MAX_POLISH) -> RootSet:
    """
    All complex roots of ``f`` in floating point: companion-matrix
    eigenvalues polished by Aberth-Ehrlich iterations. A polishing sweep
    is kept only if it lowers the worst backward error.

    :param f: Polynomial of degree at least 1.
    :param max_iter:
        Default ``50``. Maximum number of polishing sweeps.
    :type f: Polynomial or sequence of ascending coefficients
    :type max_iter: int

    :return: ``deg f`` roots and their backward errors.
    :rtype: RootSet

    :raises RootFindingError:
        If some root is not finite or its backward error exceeds ``1e-4``;
        the unpolished roots are attached as ``partial``.

    :Example:

    .. code-block:: python

        import hurwitzkit as hk

        hk.all_roots([6, 11, 6, 1]).roots  # approx. [-3, -2, -1]
    """
    f = as_polynomial(f)
    if f.degree < 1:
        raise ValueError("Root finding needs a polynomial of degree >= 1.")
    c = _float_coeffs(f)
    dc = P.polyder(c)
    z = P.polyroots(c).astype(complex)
    err = _backward_error(c, z)

    for sweep in range(max_iter):
        if err.max() <= np.finfo(float).eps:
            break
        candidate = _aberth_step(c, dc, z)
        candidate_err = _backward_error(c, candidate)
        if not candidate_err.max() < err.max():
            break
        z, err = candidate, candidate_err
        logger.debug("Polishing sweep %d: worst error %.3e", sweep, err.max())

    order = np.lexsort((z.imag, z.real))
    out = RootSet(z[order], err[order])

    worst = float(err.max())
    if not np.all(np.isfinite(z)) or not worst <= FAILURE_BOUND:
        raise RootFindingError(
            f"Root finding failed for {f}: backward error {worst:.3e}.", out
        )
    if worst > RESIDUAL_BOUND:
        warnings.warn(
            f"Backward error {worst:.3e} for {f} exceeds {RESIDUAL_BOUND}; "
            "oracle roots may be inaccurate.",
            UserWarning,
        )
    return out


def oracle_stability(f: PolynomialLike, tol: float = 1e-9) -> OracleVerdict:
    """
    Floating-point stability verdict from the root locations: the margin
    is :math:`\\max_j \\operatorname{Re} z_j`, compared against the tolerance
    ``tol`` scaled by :math:`1 + \\max_j |z_j|`.

    :param f: Polynomial of degree at least 1.
    :param tol:
        Default ``1e-9``. Relative half-width of the ``Boundary`` band.
    :type f: Polynomial or sequence of ascending coefficients
    :type tol: float

    :return:
        ``Stable`` if the margin is below ``-tolerance``, ``NotStable`` if
        above ``tolerance``, ``Boundary`` otherwise. ``tolerance`` holds the
        scaled value actually used.
    :rtype: OracleVerdict

    :Example:

    .. code-block:: python

        import hurwitzkit as hk

        hk.oracle_stability([6, 11, 6, 1]).margin  # approx. -1.0
        hk.oracle_stability([1, 1, 1, 1]).verdict  # Verdict.BOUNDARY
    """
    if tol < 0:
        raise ValueError("'tol' must be nonnegative.")
    roots = all_roots(f).roots
    margin = float(roots.real.max())
    scaled = tol * (1.0 + float(np.abs(roots).max()))
    if margin < -scaled:
        verdict = Verdict.STABLE
    elif margin > scaled:
        verdict = Verdict.NOT_STABLE
    else:
        verdict = Verdict.BOUNDARY
    return OracleVerdict(verdict, margin, scaled)


def _times(coeffs: list, factor: tuple) -> list:
    out = [Fraction(0)] * (len(coeffs) + len(factor) - 1)
    for i, a in enumerate(coeffs):
        for j, b in enumerate(factor):
            out[i + j] += a * b
    return out


def poly_from_roots(
    real_roots: Iterable[RationalLike] = (),
    pairs: Iterable[tuple] = (),
) -> Polynomial:
    """
    Exact monic expansion of
    :math:`\\prod_k (x - r_k) \\prod_m ((x - a_m)^2 + b_m^2)`.

    :param real_roots: Default ``()``. Real roots :math:`r_k`.
    :param pairs:
        Default ``()``. Tuples ``(a, b)`` standing for the conjugate pair
        :math:`a \\pm b i`.
    :type real_roots: Iterable of rational-like values
    :type pairs: Iterable of tuples of rational-like values

    :return: The monic polynomial with exactly these roots.
    :rtype: Polynomial

    :Example:

    .. code-block:: python

        import hurwitzkit as hk

        hk.poly_from_roots([-1, -2, -3]).coeffs  # (6, 11, 6, 1)
        hk.poly_from_roots(pairs=[(-1, 2)]).coeffs  # (5, 2, 1)
    """
    coeffs = [Fraction(1)]
    for r in real_roots:
        coeffs = _times(coeffs, (-to_fraction(r), Fraction(1)))
    for a, b in pairs:
        a, b = to_fraction(a), to_fraction(b)
        coeffs = _times(coeffs, (a * a + b * b, -2 * a, Fraction(1)))
    return Polynomial(tuple(coeffs))


def gen_stable(n: int, seed: int = 0, spread: float = 4.0) -> Polynomial:
    """
    Random stable polynomial of degree ``n``: :math:`\\lfloor n/2 \\rfloor`
    conjugate pairs and ``n mod 2`` real roots, all with real part in
    :math:`(-\\mathrm{spread}, 0)`, drawn on the grid of sixteenths so the
    expansion is exact. Every coefficient is strictly positive.

    :param n: Degree, at least 1.
    :param seed: Default ``0``. Seed for ``numpy.random.default_rng``.
    :param spread: Default ``4.0``. Bound on the real and imaginary parts.
    :type n: int
    :type seed: int
    :type spread: float

    :return: A monic Hurwitz-stable polynomial.
    :rtype: Polynomial
    """
    check_sizes(n=n)
    top = int(spread * GRID_DENOMINATOR)
    if top < 2:
        raise ValueError("'spread' must be at least 1/8.")
    rng = np.random.default_rng(seed)

    def real_part() -> Fraction:
        return -Fraction(int(rng.integers(1, top)), GRID_DENOMINATOR)

    def imag_part() -> Fraction:
        return Fraction(int(rng.integers(1, top + 1)), GRID_DENOMINATOR)

    pairs = [(real_part(), imag_part()) for _ in range(n // 2)]
    real_roots = [real_part() for _ in range(n % 2)]
    return poly_from_roots(real_roots, pairs)


def gen_random(n: int, seed: int = 0, coeff_bound: int = 20) -> Polynomial:
    """
    Random integer polynomial of degree exactly ``n`` with coefficients
    uniform in ``[-coeff_bound, coeff_bound]`` and a positive leading
    coefficient. A zero constant term is kept.

    :param n: Degree, at least 1.
    :param seed: Default ``0``. Seed for ``numpy.random.default_rng``.
    :param coeff_bound: Default ``20``. Largest coefficient magnitude.
    :type n: int
    :type seed: int
    :type coeff_bound: int

    :return: The random polynomial.
    :rtype: Polynomial
    """
    check_sizes(n=n, coeff_bound=coeff_bound)
    rng = np.random.default_rng(seed)
    coeffs = rng.integers(-coeff_bound, coeff_bound, size=n + 1, endpoint=True)
    coeffs[-1] = rng.integers(1, coeff_bound, endpoint=True)
    return Polynomial(tuple(int(a) for a in coeffs))

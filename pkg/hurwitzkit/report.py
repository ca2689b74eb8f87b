import logging
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Optional, Union

import numpy as np
import pandas as pd

from .hermite_biehler import (
    InterlacingReport,
    RootIsolation,
    condition_b,
    condition_b_literal,
    refine_root,
)
from .hurwitz import minor_criterion
from .oracle import RootFindingError, gen_random, gen_stable, oracle_stability
from .poly import (
    Polynomial,
    PolynomialLike,
    as_polynomial,
    even_odd_split,
)
from .routh import (
    RouthChain,
    RouthFailure,
    StabilityReport,
    Verdict,
    is_stable_routh,
    normalize_sign,
    routh_chain,
    routh_sequence,
    terminal_matches_leading,
)
from .utils import check_sizes

logger = logging.getLogger(__name__)

METHODS = {
    "all": ("routh", "minors", "hb", "oracle"),
    "routh": ("routh",),
    "minors": ("minors",),
    "hb": ("hb",),
    "oracle": ("oracle",),
}

EXIT_STABLE = 0
EXIT_USAGE = 2
EXIT_NOT_STABLE = 3
EXIT_BOUNDARY = 4
EXIT_DISAGREEMENT = 5

VERDICT_EXIT = {
    Verdict.STABLE.value: EXIT_STABLE,
    Verdict.NOT_STABLE.value: EXIT_NOT_STABLE,
    Verdict.BOUNDARY.value: EXIT_BOUNDARY,
}


@dataclass
class Report:
    """
    Everything :func:`analyze` found out about one polynomial. Rationals
    are kept as ``"num/den"`` strings so the report serializes to JSON
    without loss.
    """

    input: list
    degree: int
    verdicts: dict
    chain: Optional[dict] = None
    minors: Optional[list] = None
    interlacing: Optional[dict] = None
    agreement: bool = True
    exit: int = EXIT_STABLE
    timing_ms: float = 0.0
    notes: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return asdict(self)


def render_roots(g: Polynomial, iso: RootIsolation) -> list:
    """Isolating intervals as strings plus a float midpoint after
    refinement."""
    out = []
    for interval, m in zip(iso.intervals, iso.multiplicities):
        a, b = refine_root(g, interval)
        out.append(
            {
                "interval": [str(interval[0]), str(interval[1])],
                "multiplicity": m,
                "approx": float((a + b) / 2),
            }
        )
    return out


def chain_summary(f: Polynomial, routh_report: StabilityReport) -> dict:
    f = normalize_sign(f)[0]
    chain = routh_chain(f)
    if isinstance(chain, RouthChain):
        cs, b = [str(c) for c in chain.cs], str(chain.terminal)
    else:
        cs, b = [str(c) for c, _ in routh_sequence(f)], None
    witness = routh_report.witness
    failure = str(witness) if isinstance(witness, RouthFailure) else None
    return {"cs": cs, "b": b, "failure": failure}


def interlacing_summary(f: Polynomial, hb_report: StabilityReport) -> dict:
    witness = hb_report.witness
    out = {"phase_sign": witness.phase_sign}
    if not isinstance(witness.interlacing, InterlacingReport):
        return out
    rep = witness.interlacing
    pair = even_odd_split(normalize_sign(f)[0])
    out.update(
        p_roots=render_roots(pair.p, rep.p_roots),
        q_roots=render_roots(pair.q, rep.q_roots),
        all_real=rep.all_real,
        all_negative=rep.all_negative,
        all_simple=rep.all_simple,
        interlaced=rep.interlaced,
        rightmost_is_p=rep.rightmost_is_p,
        sign_condition=rep.sign_condition,
        coprime=rep.coprime,
        verdict=rep.verdict,
    )
    return out


def analyze(
    f: PolynomialLike, method: str = "all", tol: float = 1e-9
) -> Report:
    """
    Run the requested stability tests on ``f`` and collect the results in
    a :class:`Report`.

    :param f: A nonzero polynomial.
    :param method:
        Default ``"all"``. One of ``"all"``, ``"routh"``, ``"minors"``,
        ``"hb"`` or ``"oracle"``.
    :param tol: Default ``1e-9``. Oracle tolerance.
    :type f: Polynomial or sequence of ascending coefficients
    :type method: str
    :type tol: float

    :return:
        The report. ``agreement`` is ``True`` if all computed exact
        verdicts coincide; ``exit`` is the command-line exit code: ``0``
        stable, ``3`` not stable, ``4`` oracle boundary (oracle method
        only), ``5`` disagreement between exact methods.
    :rtype: Report

    :Example:

    .. code-block:: python

        import hurwitzkit as hk

        report = hk.analyze([6, 11, 6, 1])
        report.verdicts["routh"], report.chain["cs"]
        # 'Stable', ['6/11', '121/60', '60/11']
    """
    if method not in METHODS:
        raise ValueError(
            f"'method' must be one of {', '.join(METHODS)}, not {method!r}."
        )
    start = time.perf_counter()
    f = as_polynomial(f)
    if f.is_zero:
        raise ValueError("Stability is undefined for the zero polynomial.")

    report = Report(
        input=[str(a) for a in f.coeffs],
        degree=f.degree,
        verdicts=dict.fromkeys(("routh", "minors", "hb", "oracle")),
    )
    notes = []
    run = METHODS[method]

    if "routh" in run:
        rep = is_stable_routh(f)
        report.verdicts["routh"] = rep.verdict.value
        report.chain = chain_summary(f, rep)
        notes.extend(rep.notes)
    if "minors" in run:
        rep = minor_criterion(f)
        report.verdicts["minors"] = rep.verdict.value
        report.minors = [str(m) for m in rep.witness.values]
        notes.extend(rep.notes)
    if "hb" in run:
        rep = condition_b(f)
        report.verdicts["hb"] = rep.verdict.value
        report.interlacing = interlacing_summary(f, rep)
        notes.extend(rep.notes)
    if "oracle" in run:
        if f.degree == 0:
            notes.append("oracle: a constant has no roots")
        else:
            try:
                ov = oracle_stability(f, tol)
            except RootFindingError as err:
                notes.append(f"oracle: {err}")
            else:
                report.verdicts["oracle"] = ov.verdict.value
                notes.append(
                    f"oracle margin {ov.margin:.6g} "
                    f"(tolerance {ov.tolerance:.3g})"
                )

    exact = {
        v for k, v in report.verdicts.items() if k != "oracle" and v
    }
    report.agreement = len(exact) <= 1
    if not report.agreement:
        logger.error("Exact methods disagree on %s: %s", f, report.verdicts)
        report.exit = EXIT_DISAGREEMENT
    elif method == "oracle":
        report.exit = VERDICT_EXIT.get(report.verdicts["oracle"], EXIT_USAGE)
    else:
        report.exit = VERDICT_EXIT[exact.pop()]

    oracle = report.verdicts["oracle"]
    if method == "all" and oracle not in (None, Verdict.BOUNDARY.value):
        if oracle != report.verdicts["routh"]:
            notes.append("oracle disagrees with the exact verdict")

    report.notes = list(dict.fromkeys(notes))
    report.timing_ms = (time.perf_counter() - start) * 1000
    return report


def _check_row(kind: str, degree: int, seed: int, f: Polynomial, tol):
    routh = is_stable_routh(f)
    exact = {
        "routh": routh.verdict.value,
        "minors": minor_criterion(f).verdict.value,
        "hb": condition_b(f).verdict.value,
        "hb_literal": condition_b_literal(f).verdict.value,
    }
    try:
        ov = oracle_stability(f, tol)
        oracle, margin = ov.verdict.value, ov.margin
    except RootFindingError as err:
        logger.warning("Oracle failed on %s: %s", f, err)
        oracle, margin = None, np.nan

    if oracle is None or oracle == Verdict.BOUNDARY.value:
        oracle_agreement = None
    else:
        oracle_agreement = oracle == exact["routh"]

    witness = routh.witness
    return {
        "kind": kind,
        "degree": degree,
        "seed": seed,
        "coeffs": " ".join(str(a) for a in f.coeffs),
        **exact,
        "oracle": oracle,
        "margin": margin,
        "exact_agreement": len(set(exact.values())) == 1,
        "oracle_agreement": oracle_agreement,
        "b_equals_leading": terminal_matches_leading(normalize_sign(f)[0]),
        "routh_failure": (
            str(witness) if isinstance(witness, RouthFailure) else None
        ),
    }


def crosscheck(
    count: int,
    degree_max: int = 10,
    seed: int = 0,
    coeff_bound: int = 20,
    tol: float = 1e-9,
) -> pd.DataFrame:
    """
    Randomized cross-validation of every exact method against each other
    and against the floating-point oracle. The first half of the inputs
    comes from :func:`gen_stable`, the rest from :func:`gen_random`, with
    degrees uniform in ``1 .. degree_max``. Results are deterministic for
    a fixed ``seed``.

    :param count: Number of polynomials, at least 1.
    :param degree_max: Default ``10``. Largest degree.
    :param seed: Default ``0``. Master seed.
    :param coeff_bound: Default ``20``. Coefficient bound for random inputs.
    :param tol: Default ``1e-9``. Oracle tolerance.
    :type count: int
    :type degree_max: int
    :type seed: int
    :type coeff_bound: int
    :type tol: float

    :return:
        One row per polynomial with the verdict of every method, the oracle
        margin, ``exact_agreement``, ``oracle_agreement`` (``None`` when
        the oracle returned ``Boundary`` or failed) and
        ``b_equals_leading``.
    :rtype: pd.DataFrame

    :Example:

    .. code-block:: python

        import hurwitzkit as hk

        df = hk.crosscheck(20, degree_max=5, seed=42)
        hk.summarize_crosscheck(df)["disagreements"]  # 0
    """
    check_sizes(count=count, degree_max=degree_max, coeff_bound=coeff_bound)
    rng = np.random.default_rng(seed)
    n_stable = (count + 1) // 2
    rows = []
    for i in range(count):
        degree = int(rng.integers(1, degree_max, endpoint=True))
        sub_seed = int(rng.integers(2**32))
        if i < n_stable:
            kind, f = "stable", gen_stable(degree, sub_seed)
        else:
            kind = "random"
            f = gen_random(degree, sub_seed, coeff_bound)
        rows.append(_check_row(kind, degree, sub_seed, f, tol))
        if (i + 1) % 100 == 0:
            logger.info("Cross-checked %d of %d polynomials", i + 1, count)
    return pd.DataFrame(rows)


def summarize_crosscheck(df: pd.DataFrame) -> dict:
    """
    Tally a :func:`crosscheck` table: ``total``, ``agreed``, ``excluded``
    (oracle ``Boundary`` or failure), ``disagreements`` (exact methods
    among themselves plus exact against oracle) and the ``b == a_n``
    observation counts.
    """
    exact_disagreements = int((~df["exact_agreement"].astype(bool)).sum())
    oracle_disagreements = int(df["oracle_agreement"].eq(False).sum())
    excluded = int(df["oracle_agreement"].isna().sum())
    agreed = int(
        (df["exact_agreement"].astype(bool) & df["oracle_agreement"].eq(True))
        .sum()
    )
    return {
        "total": len(df),
        "agreed": agreed,
        "excluded": excluded,
        "disagreements": exact_disagreements + oracle_disagreements,
        "exact_disagreements": exact_disagreements,
        "oracle_disagreements": oracle_disagreements,
        "b_equals_leading": int(df["b_equals_leading"].eq(True).sum()),
        "b_differs_from_leading": int(df["b_equals_leading"].eq(False).sum()),
    }


def write_crosscheck(df: pd.DataFrame, path: Union[str, Path]) -> None:
    """Write a crosscheck table as ``.csv`` or ``.parquet``."""
    path = Path(path)
    if path.suffix == ".parquet":
        df.to_parquet(path, index=False)
    elif path.suffix == ".csv":
        df.to_csv(path, index=False)
    else:
        raise ValueError(
            f"Unsupported output format {path.suffix!r}; "
            "use .csv or .parquet."
        )

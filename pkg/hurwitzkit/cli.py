import argparse
import json
import logging
import re
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Optional

import numpy as np

from .hermite_biehler import condition_b
from .hurwitz import (
    all_minors_nonnegative,
    hurwitz_truncation,
    leading_principal_minors,
    verify_full_factorization,
)
from .oracle import (
    RootFindingError,
    all_roots,
    gen_random,
    gen_stable,
    oracle_stability,
)
from .poly import Polynomial
from .report import (
    EXIT_BOUNDARY,
    EXIT_DISAGREEMENT,
    EXIT_NOT_STABLE,
    EXIT_STABLE,
    EXIT_USAGE,
    METHODS,
    VERDICT_EXIT,
    analyze,
    crosscheck,
    interlacing_summary,
    summarize_crosscheck,
    write_crosscheck,
)
from .routh import RouthFailure, routh_chain

logger = logging.getLogger(__name__)

# Exact literals only: integers, p/q and plain decimals, no exponents
_TOKEN = re.compile(r"^[+-]?(?:\d+/\d+|\d+(?:\.\d*)?|\.\d+)$")
_SEPARATORS = re.compile(r"[\s,]+")

_OVERALL = {
    EXIT_STABLE: "Stable",
    EXIT_NOT_STABLE: "NotStable",
    EXIT_BOUNDARY: "Boundary",
    EXIT_DISAGREEMENT: "Disagreement",
}


class ParseError(ValueError):
    pass


@dataclass(frozen=True)
class PolynomialInput:
    raw: str
    parsed: Polynomial
    descending: bool = False

    def __str__(self) -> str:
        return format_coefficients(self.parsed, self.descending)


@dataclass
class CommandResult:
    """JSON payload, text lines (the first one a summary) and exit code."""

    payload: dict
    lines: list = field(default_factory=list)
    exit: int = EXIT_STABLE


def parse_polynomial(text: str, descending: bool = False) -> PolynomialInput:
    """
    Parse whitespace- or comma-separated coefficients, ascending unless
    ``descending`` is set. Accepts integers, ``p/q`` and decimal literals;
    scientific notation is rejected so that nothing is rounded.
    """
    tokens = [t for t in _SEPARATORS.split(text.strip()) if t]
    if not tokens:
        raise ParseError("No coefficients given.")
    bad = [t for t in tokens if not _TOKEN.match(t)]
    if bad:
        raise ParseError(f"Cannot parse coefficient(s): {', '.join(bad)}.")
    try:
        coeffs = [Fraction(t) for t in tokens]
    except ZeroDivisionError:
        raise ParseError("Zero denominator in a coefficient.") from None
    if descending:
        coeffs.reverse()
    poly = Polynomial(tuple(coeffs))
    if poly.is_zero:
        raise ParseError("The zero polynomial is not a valid input.")
    return PolynomialInput(text, poly, descending)


def format_coefficients(f: Polynomial, descending: bool = False) -> str:
    coeffs = [str(a) for a in f.coeffs]
    if descending:
        coeffs.reverse()
    return " ".join(coeffs)


def _fractions(values) -> list:
    return [str(v) for v in values]


def _matrix(m: np.ndarray) -> list:
    return [_fractions(row) for row in m]


def cmd_check(args, poly: PolynomialInput) -> CommandResult:
    report = analyze(poly.parsed, args.method, args.tol)
    ran = ", ".join(f"{k}={v}" for k, v in report.verdicts.items() if v)
    overall = _OVERALL.get(report.exit, "Undetermined")
    lines = [f"{poly.parsed}: {overall} ({ran})"]
    if report.chain is not None:
        lines.append(f"  chain cs = [{', '.join(report.chain['cs'])}]")
        lines.append(f"  chain b = {report.chain['b']}")
        if report.chain["failure"]:
            lines.append(f"  failure: {report.chain['failure']}")
    if report.minors is not None:
        lines.append(f"  minors = [{', '.join(report.minors)}]")
    lines.extend(f"  note: {note}" for note in report.notes)
    return CommandResult(report.to_dict(), lines, report.exit)


def cmd_factor(args, poly: PolynomialInput) -> CommandResult:
    f = poly.parsed
    chain = routh_chain(f)
    if isinstance(chain, RouthFailure):
        return CommandResult(
            {"input": _fractions(f.coeffs), "failure": str(chain)},
            [f"{f}: chain failure {chain}"],
            EXIT_NOT_STABLE,
        )
    size = 2 * (f.degree + 1)
    rows = size if args.rows is None else args.rows
    cols = size if args.cols is None else args.cols
    verified = verify_full_factorization(f, rows, cols)
    payload = {
        "input": _fractions(f.coeffs),
        "cs": _fractions(chain.cs),
        "b": str(chain.terminal),
        "b_equals_leading": chain.terminal == f.leading,
        "rows": rows,
        "cols": cols,
        "hurwitz": _matrix(hurwitz_truncation(f, rows, cols)),
        "verified": verified,
    }
    lines = [
        f"cs = [{', '.join(payload['cs'])}], b = {payload['b']}, "
        f"verified = {verified}",
        f"H(f) truncated to {rows} x {cols}:",
    ]
    lines.extend("  " + " ".join(row) for row in payload["hurwitz"])
    return CommandResult(
        payload, lines, EXIT_STABLE if verified else EXIT_DISAGREEMENT
    )


def cmd_minors(args, poly: PolynomialInput) -> CommandResult:
    f = poly.parsed
    k = f.degree + 1 if args.k is None else args.k
    values = _fractions(leading_principal_minors(f, k).values)
    return CommandResult(
        {"input": _fractions(f.coeffs), "k": k, "minors": values},
        [f"minors = [{', '.join(values)}]"],
    )


def cmd_tnn(args, poly: PolynomialInput) -> CommandResult:
    f = poly.parsed
    size = f.degree + 3
    rows = size if args.rows is None else args.rows
    cols = size if args.cols is None else args.cols
    order = min(4, rows, cols) if args.order is None else args.order
    result = all_minors_nonnegative(hurwitz_truncation(f, rows, cols), order)
    payload = {
        "input": _fractions(f.coeffs),
        "rows": rows,
        "cols": cols,
        "order": order,
        "ok": result.ok,
        "checked": result.checked,
        "counterexample": None,
    }
    line = f"ok = {result.ok} ({result.checked} minors checked)"
    if not result.ok:
        row_idx, col_idx, value = result.counterexample
        payload["counterexample"] = {
            "rows": list(row_idx),
            "cols": list(col_idx),
            "value": str(value),
        }
        line += f"; rows {row_idx}, cols {col_idx} give {value}"
    return CommandResult(
        payload, [line], EXIT_STABLE if result.ok else EXIT_NOT_STABLE
    )


def cmd_interlace(args, poly: PolynomialInput) -> CommandResult:
    f = poly.parsed
    rep = condition_b(f)
    summary = interlacing_summary(f, rep)
    payload = {
        "input": _fractions(f.coeffs),
        "verdict": rep.verdict.value,
        "interlacing": summary,
        "notes": list(rep.notes),
    }
    lines = [f"{f}: {rep.verdict.value}"]
    for part in ("p_roots", "q_roots"):
        if part in summary:
            approx = [root["approx"] for root in summary[part]]
            lines.append(f"  {part} ~ {approx}")
    lines.extend(f"  note: {note}" for note in rep.notes)
    return CommandResult(payload, lines, VERDICT_EXIT[rep.verdict.value])


def cmd_roots(args, poly: PolynomialInput) -> CommandResult:
    f = poly.parsed
    roots = all_roots(f)
    verdict = oracle_stability(f, args.tol)
    payload = {
        "input": _fractions(f.coeffs),
        "roots": [[float(z.real), float(z.imag)] for z in roots.roots],
        "residuals": [float(r) for r in roots.residuals],
        "verdict": verdict.verdict.value,
        "margin": verdict.margin,
        "tolerance": verdict.tolerance,
    }
    lines = [f"{f}: {verdict.verdict.value} (margin {verdict.margin:.6g})"]
    lines.extend(f"  {z:.12g}" for z in roots.roots)
    return CommandResult(payload, lines, VERDICT_EXIT[verdict.verdict.value])


def cmd_generate(args) -> CommandResult:
    polys = []
    for i in range(args.count):
        if args.kind == "stable":
            f = gen_stable(args.degree, args.seed + i, args.spread)
        else:
            f = gen_random(args.degree, args.seed + i, args.coeff_bound)
        polys.append(f)
    lines = [format_coefficients(f, args.descending) for f in polys]
    return CommandResult(
        {"polynomials": [_fractions(f.coeffs) for f in polys]}, lines
    )


def cmd_crosscheck(args) -> CommandResult:
    df = crosscheck(
        args.count, args.degree_max, args.seed, args.coeff_bound, args.tol
    )
    summary = summarize_crosscheck(df)
    if args.output:
        write_crosscheck(df, args.output)
    lines = [
        f"total = {summary['total']}, agreed = {summary['agreed']}, "
        f"excluded = {summary['excluded']}, "
        f"disagreements = {summary['disagreements']}"
    ]
    lines.extend(f"  {key} = {value}" for key, value in summary.items())
    ok = summary["disagreements"] == 0
    return CommandResult(
        summary, lines, EXIT_STABLE if ok else EXIT_DISAGREEMENT
    )


POLY_COMMANDS = {
    "check": cmd_check,
    "factor": cmd_factor,
    "minors": cmd_minors,
    "tnn": cmd_tnn,
    "interlace": cmd_interlace,
    "roots": cmd_roots,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hurwitzkit",
        description="Exact Hurwitz stability tests for real polynomials.",
    )
    parser.add_argument(
        "-v",
        "--verbose",
        action="count",
        default=0,
        help="Increase logging verbosity (-v info, -vv debug).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    output = argparse.ArgumentParser(add_help=False)
    output.add_argument("--json", action="store_true", help="Emit JSON.")
    output.add_argument(
        "--descending",
        action="store_true",
        help="Coefficients run from a_n down to a_0.",
    )

    poly = argparse.ArgumentParser(add_help=False, parents=[output])
    poly.add_argument(
        "coefficients",
        nargs="*",
        help="Coefficients a_0 ... a_n (use -- before negative fractions).",
    )
    poly.add_argument(
        "--file", help="Read one polynomial per line ('#' starts a comment)."
    )

    check = sub.add_parser("check", parents=[poly], help="Decide stability.")
    check.add_argument("--method", choices=list(METHODS), default="all")
    check.add_argument("--tol", type=float, default=1e-9)

    factor = sub.add_parser(
        "factor", parents=[poly], help="Verify the Routh factorization."
    )
    factor.add_argument("--rows", type=int)
    factor.add_argument("--cols", type=int)

    minors = sub.add_parser(
        "minors", parents=[poly], help="Leading principal Hurwitz minors."
    )
    minors.add_argument("--k", type=int)

    tnn = sub.add_parser(
        "tnn", parents=[poly], help="Check minors of H(f) are nonnegative."
    )
    tnn.add_argument("--rows", type=int)
    tnn.add_argument("--cols", type=int)
    tnn.add_argument("--order", type=int, help="Largest minor order.")

    sub.add_parser(
        "interlace", parents=[poly], help="Hermite-Biehler interlacing."
    )

    roots = sub.add_parser(
        "roots", parents=[poly], help="Floating-point roots (oracle)."
    )
    roots.add_argument("--tol", type=float, default=1e-9)

    generate = sub.add_parser(
        "generate", parents=[output], help="Generate test polynomials."
    )
    generate.add_argument(
        "--kind", choices=["stable", "random"], default="stable"
    )
    generate.add_argument("--count", type=int, default=1)
    generate.add_argument("--degree", type=int, default=3)
    generate.add_argument("--seed", type=int, default=0)
    generate.add_argument("--spread", type=float, default=4.0)
    generate.add_argument("--coeff-bound", type=int, default=20)

    cross = sub.add_parser(
        "crosscheck",
        parents=[output],
        help="Randomized agreement check of all methods.",
    )
    cross.add_argument("--count", type=int, default=100)
    cross.add_argument("--degree-max", type=int, default=10)
    cross.add_argument("--seed", type=int, default=0)
    cross.add_argument("--coeff-bound", type=int, default=20)
    cross.add_argument("--tol", type=float, default=1e-9)
    cross.add_argument("--output", help="Write the table (.csv, .parquet).")
    return parser


def _read_lines(path: str) -> list:
    out = []
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            out.append(line)
    return out


def _emit(result: CommandResult, as_json: bool, compact: bool) -> None:
    if as_json:
        print(json.dumps(result.payload, indent=None if compact else 2))
    elif compact:
        print(result.lines[0] if result.lines else "")
    else:
        print("\n".join(result.lines))


def _error(message: str) -> None:
    print(f"hurwitzkit: error: {message}", file=sys.stderr)


def _run_poly_command(args) -> int:
    command = POLY_COMMANDS[args.command]
    if args.file:
        batch = True
        try:
            texts = _read_lines(args.file)
        except (OSError, UnicodeDecodeError) as err:
            _error(str(err))
            return EXIT_USAGE
        logger.info("Read %d polynomial(s) from %s", len(texts), args.file)
    elif args.coefficients:
        batch = False
        texts = [" ".join(args.coefficients)]
    else:
        _error("give coefficients or --file.")
        return EXIT_USAGE

    exits = []
    for text in texts:
        try:
            poly = parse_polynomial(text, args.descending)
            result = command(args, poly)
        except (ValueError, RootFindingError) as err:
            # One bad line must not stop a batch
            if batch and args.json:
                print(json.dumps({"input": text, "error": str(err)}))
            elif batch:
                print(f"{text}: error: {err}")
            else:
                _error(str(err))
            exits.append(EXIT_USAGE)
            continue
        _emit(result, args.json, compact=batch)
        exits.append(result.exit)

    if not batch:
        return exits[0]
    if EXIT_DISAGREEMENT in exits:
        return EXIT_DISAGREEMENT
    if EXIT_USAGE in exits:
        return EXIT_USAGE
    return EXIT_STABLE


def main(argv: Optional[list] = None) -> int:
    """
    Entry point of the ``hurwitzkit`` command. Returns the exit code
    instead of calling ``sys.exit`` so it can be driven from tests.
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as err:
        return int(err.code or 0)

    level = [logging.WARNING, logging.INFO, logging.DEBUG]
    logging.basicConfig(
        level=level[min(args.verbose, 2)],
        format="%(levelname)s %(name)s: %(message)s",
    )

    if args.command in POLY_COMMANDS:
        return _run_poly_command(args)
    handler = cmd_generate if args.command == "generate" else cmd_crosscheck
    try:
        result = handler(args)
    except (ValueError, RootFindingError) as err:
        _error(str(err))
        return EXIT_USAGE
    _emit(result, args.json, compact=False)
    return result.exit


if __name__ == "__main__":
    sys.exit(main())

"""Command-line interface with machine-readable output.

Subcommands: row, sums, phi, verify, mine.  Every command accepts --json and
emits a ReportDocument: a JSON object with schema_version, command,
parameters, and a command-specific results payload in which every integer
and rational is rendered as a decimal string (rationals as "p/q" in lowest
terms, integers without the "/1").  Output is deterministic: key order is
fixed and kernel bases are canonical.

Exit codes: 0 success (and, for verify/mine, every check passed);
1 a verified bound or equality failed; 2 usage or input error;
3 resource limit (for example a row index past the configured cap).
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from fractions import Fraction

from .forms import HomogPoly, phi_matrix, sym_quotient
from .recurrences import (
    AFFINE_ALT,
    HOMOGENEOUS,
    InsufficientDataError,
    corollary_bound,
    mine_all_monomials,
)
from .spectra import verify_range
from .stern import (
    DEFAULT_ROW_CAP,
    RowCapError,
    power_sum_direct,
    power_sum_sequence,
    stern_row,
)

SCHEMA_VERSION = "1"

EXIT_OK = 0
EXIT_VERIFICATION_FAILED = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3


def encode_rational(x) -> str:
    """Decimal-string form: integers plain, non-integers as p/q in lowest terms."""
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, int):
        return str(x)
    if isinstance(x, Fraction):
        if x.denominator == 1:
            return str(x.numerator)
        return f"{x.numerator}/{x.denominator}"
    raise TypeError(f"cannot encode {type(x).__name__} as a rational")


def decode_rational(s: str):
    """Inverse of encode_rational."""
    if "/" in s:
        num, den = s.split("/")
        return Fraction(int(num), int(den))
    return int(s)


def encode_payload(value):
    """Recursively stringify every rational in a results payload."""
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, (int, Fraction)):
        return encode_rational(value)
    if isinstance(value, dict):
        return {k: encode_payload(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [encode_payload(v) for v in value]
    raise TypeError(f"cannot encode {type(value).__name__} in a report")


def report_document(command: str, parameters: dict, results) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "parameters": {k: encode_payload(v) for k, v in parameters.items()},
        "results": encode_payload(results),
    }


def emit_json(doc: dict) -> None:
    print(json.dumps(doc, indent=2))


_FACTOR = re.compile(r"([xy])(?:\^(\d+))?")


def parse_fspec(spec: str) -> HomogPoly:
    """Parse a form: a monomial token like x^2*y or x^2y, or coeffs=[...].

    coeffs=[c0,c1,...,cr] lists the coefficient of x^a y^(r-a) at index a;
    entries may be integers or fractions p/q.
    """
    spec = spec.strip()
    if spec.startswith("coeffs="):
        body = spec[len("coeffs="):].strip()
        if not (body.startswith("[") and body.endswith("]")):
            raise ValueError("coeffs= expects a bracketed list, e.g. coeffs=[0,1,2]")
        items = [p.strip() for p in body[1:-1].split(",") if p.strip()]
        if not items:
            raise ValueError("coefficient list is empty")
        return HomogPoly([Fraction(p) for p in items])
    pos = 0
    powers = {"x": 0, "y": 0}
    seen = False
    while pos < len(spec):
        if spec[pos] == "*":
            pos += 1
            continue
        m = _FACTOR.match(spec, pos)
        if not m:
            raise ValueError(
                f"cannot parse form {spec!r}; expected a monomial like x^2*y "
                f"or coeffs=[...]"
            )
        var, exp = m.group(1), m.group(2)
        powers[var] += int(exp) if exp is not None else 1
        seen = True
        pos = m.end()
    if not seen:
        raise ValueError(f"cannot parse form {spec!r}")
    degree = powers["x"] + powers["y"]
    return HomogPoly.monomial(powers["x"], degree)


def _matrix_payload(m) -> list:
    return [list(row) for row in m.rows]


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_row(args) -> int:
    try:
        row = stern_row(args.n, args.cap)
    except RowCapError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE if args.n < 1 else EXIT_RESOURCE
    if args.format == "json":
        emit_json(
            report_document(
                "row",
                {"n": args.n, "cap": args.cap},
                {"entries": list(row.entries)},
            )
        )
    elif args.format == "csv":
        print(",".join(str(e) for e in row.entries))
    else:
        print(" ".join(str(e) for e in row.entries))
    return EXIT_OK


def cmd_sums(args) -> int:
    try:
        f = parse_fspec(args.fspec)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.n_max < 1:
        print("error: n_max must be at least 1", file=sys.stderr)
        return EXIT_USAGE
    mode = args.mode
    values = None
    agree = None
    try:
        if mode in ("fast", "both"):
            values = power_sum_sequence(f, args.n_max)
        if mode in ("direct", "both"):
            direct = [
                power_sum_direct(n, f, args.cap) for n in range(1, args.n_max + 1)
            ]
            if mode == "both":
                agree = direct == values
                if not agree:
                    print(
                        "error: direct and fast power sums disagree",
                        file=sys.stderr,
                    )
                    return EXIT_VERIFICATION_FAILED
            else:
                values = direct
    except RowCapError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    if args.format == "json":
        results = {"values": values, "mode": mode}
        if agree is not None:
            results["paths_agree"] = agree
        emit_json(
            report_document(
                "sums",
                {"f": args.fspec, "n_max": args.n_max, "mode": mode},
                results,
            )
        )
    elif args.format == "csv":
        print("n,value")
        for n, v in enumerate(values, start=1):
            print(f"{n},{encode_rational(v)}")
    else:
        line = " ".join(encode_rational(v) for v in values)
        if agree:
            line += " (paths agree)"
        print(line)
    return EXIT_OK


def cmd_phi(args) -> int:
    if args.r < 0:
        print("error: degree must be nonnegative", file=sys.stderr)
        return EXIT_USAGE
    if args.sym:
        _, mat = sym_quotient(args.r)
    else:
        mat = phi_matrix(args.r)
    if args.format == "json":
        emit_json(
            report_document(
                "phi",
                {"r": args.r, "sym": args.sym},
                {"matrix": _matrix_payload(mat)},
            )
        )
    else:
        for row in mat.rows:
            print(" ".join(encode_rational(x) for x in row))
    return EXIT_OK


def _verify_text_line(rep) -> str:
    mult_bits = []
    for key, chk in rep.multiplicities.items():
        flag = "=" if chk.equal else (">=" if chk.bound_holds else "VIOLATED")
        mult_bits.append(
            f"{key} pred {chk.predicted} geo {chk.geometric} alg {chk.algebraic} {flag}"
        )
    status = "PASS" if rep.passed else "FAIL"
    return f"r={rep.r:>3} {rep.parity:<4} | " + "; ".join(mult_bits) + f" | {status}"


def cmd_verify(args) -> int:
    if not 1 <= args.r_min <= args.r_max:
        print(
            f"error: range must satisfy 1 <= r_min <= r_max, "
            f"got {args.r_min}..{args.r_max}",
            file=sys.stderr,
        )
        return EXIT_USAGE
    reports = verify_range(args.r_min, args.r_max)
    all_ok = all(rep.passed for rep in reports)
    if args.format == "json":
        emit_json(
            report_document(
                "verify",
                {"r_min": args.r_min, "r_max": args.r_max},
                {
                    "reports": [rep.to_json_dict() for rep in reports],
                    "all_passed": all_ok,
                },
            )
        )
    else:
        for rep in reports:
            print(_verify_text_line(rep))
        print(
            f"{'all checks passed' if all_ok else 'CHECKS FAILED'} "
            f"for r in [{args.r_min}, {args.r_max}]"
        )
    return EXIT_OK if all_ok else EXIT_VERIFICATION_FAILED


def _mine_text_lines(results, r, affine):
    bound = corollary_bound(r, HOMOGENEOUS)
    yield f"degree {r}: homogeneous length bound {bound}" + (
        f", affine-alternating bound {corollary_bound(r, AFFINE_ALT)}" if affine else ""
    )
    for res in results:
        rec = res.recurrence
        coeffs = ", ".join(encode_rational(c) for c in rec.coefficients)
        status = "PASS" if res.within_bound and res.annihilator_validates else "FAIL"
        line = (
            f"  {res.label}: l={rec.length}, a=[{coeffs}], n0={rec.n0}"
            f" (valid from n0={res.best_n0}); bound {res.bound}: {status}"
        )
        if res.affine is not None:
            arec = res.affine
            acoeffs = ", ".join(encode_rational(c) for c in arec.coefficients)
            line += (
                f"; affine l={arec.length}, a=[{acoeffs}], "
                f"b={encode_rational(arec.affine_b)}, "
                f"c={encode_rational(arec.alternating_c)}, "
                f"bound {res.affine_bound}: "
                + ("PASS" if res.affine_within_bound else "FAIL")
            )
        yield line


def cmd_mine(args) -> int:
    if args.r < 1:
        print("error: degree must be at least 1", file=sys.stderr)
        return EXIT_USAGE
    try:
        results = mine_all_monomials(args.r, args.terms, include_affine=args.affine)
    except InsufficientDataError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    ok = all(res.within_bound and res.annihilator_validates for res in results)
    ok = ok and all(
        res.affine_within_bound is not False for res in results
    )
    if args.format == "json":
        emit_json(
            report_document(
                "mine",
                {"r": args.r, "terms": args.terms, "affine": args.affine},
                {
                    "results": [res.to_json_dict() for res in results],
                    "all_within_bounds": ok,
                },
            )
        )
    else:
        for line in _mine_text_lines(results, args.r, args.affine):
            print(line)
    return EXIT_OK if ok else EXIT_VERIFICATION_FAILED


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


def _add_format_args(sub, csv: bool = False):
    choices = ["text", "json"] + (["csv"] if csv else [])
    sub.add_argument(
        "--format", choices=choices, default="text", help="output format"
    )
    sub.add_argument(
        "--json",
        action="store_const",
        const="json",
        dest="format",
        help="shorthand for --format json",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sternsums",
        description=(
            "Exact computations on the Stern array: rows, power sums, "
            "transfer matrices, eigenvalue-multiplicity verification, and "
            "recurrence mining."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_row = sub.add_parser("row", help="print one row of the Stern array")
    p_row.add_argument("n", type=int, help="row index (1-based)")
    p_row.add_argument(
        "--cap", type=int, default=DEFAULT_ROW_CAP, help="row generation cap"
    )
    _add_format_args(p_row, csv=True)
    p_row.set_defaults(func=cmd_row)

    p_sums = sub.add_parser("sums", help="power sums S_1..S_n of a form")
    p_sums.add_argument(
        "fspec",
        help="form: monomial like x^3, x^2y, x^2*y, or coeffs=[c0,c1,...]",
    )
    p_sums.add_argument("n_max", type=int, help="number of terms")
    mode = p_sums.add_mutually_exclusive_group()
    mode.add_argument(
        "--direct", action="store_const", const="direct", dest="mode",
        help="brute-force summation over generated rows",
    )
    mode.add_argument(
        "--fast", action="store_const", const="fast", dest="mode",
        help="transfer-matrix iteration (default)",
    )
    mode.add_argument(
        "--both", action="store_const", const="both", dest="mode",
        help="run both and require exact agreement",
    )
    p_sums.set_defaults(mode="fast")
    p_sums.add_argument(
        "--cap", type=int, default=DEFAULT_ROW_CAP, help="row cap for --direct/--both"
    )
    _add_format_args(p_sums, csv=True)
    p_sums.set_defaults(func=cmd_sums)

    p_phi = sub.add_parser("phi", help="transfer matrix of degree r")
    p_phi.add_argument("r", type=int, help="degree")
    p_phi.add_argument(
        "--sym", action="store_true", help="matrix on the swap-symmetric quotient"
    )
    _add_format_args(p_phi)
    p_phi.set_defaults(func=cmd_phi)

    p_verify = sub.add_parser(
        "verify", help="verify multiplicity predictions over a degree range"
    )
    p_verify.add_argument("r_min", type=int)
    p_verify.add_argument("r_max", type=int)
    _add_format_args(p_verify)
    p_verify.set_defaults(func=cmd_verify)

    p_mine = sub.add_parser(
        "mine", help="mine minimal recurrences for degree-r power sums"
    )
    p_mine.add_argument("r", type=int, help="degree")
    p_mine.add_argument(
        "--terms", type=int, default=None, help="horizon length (default 2*bound+8)"
    )
    p_mine.add_argument(
        "--affine",
        action="store_true",
        help="also mine recurrences with b + c*(-1)^n terms",
    )
    _add_format_args(p_mine)
    p_mine.set_defaults(func=cmd_mine)

    return parser


def _park_stdout_on_devnull() -> None:
    # keeps interpreter shutdown quiet after a consumer closed the pipe
    os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BrokenPipeError:
        # the downstream consumer (head, less, ...) closed the pipe early
        _park_stdout_on_devnull()
        return EXIT_OK
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

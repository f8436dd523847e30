"""Command-line front end.

Exit codes: 0 success, 1 usage or file format, 2 infeasible parameters,
3 constraint violation or corrupt codeword. Reports go to stdout,
diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import analysis
from .codec2d import decode, derive_params, encode, verify_membership
from .errors import CorruptCodewordError, InfeasibleParametersError, ParameterError, UsageError
from .gridfile import dump_grid, load_grid, payload_from_bytes, payload_to_bytes

EXIT_OK, EXIT_USAGE, EXIT_INFEASIBLE, EXIT_CORRUPT = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def parse_f(spec: str, n: int) -> Fraction:
    """``P``, ``P/Q`` or ``half`` (meaning n/2)."""
    if spec == "half":
        return Fraction(n, 2)
    try:
        num, _, den = spec.partition("/")
        f = Fraction(int(num), int(den) if den else 1)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"cannot parse f {spec!r}; use P, P/Q or half") from None
    return f


def _params(args):
    f = parse_f(args.f, args.n)
    if f <= 0:
        raise ParameterError(f"f must be positive, got {f}")
    return derive_params(args.n, f.numerator, f.denominator)


def _read(path: str) -> bytes:
    try:
        return sys.stdin.buffer.read() if path == "-" else Path(path).read_bytes()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _write(path: str, data: bytes) -> None:
    if path == "-":
        sys.stdout.buffer.write(data)
        sys.stdout.buffer.flush()
    else:
        Path(path).write_bytes(data)


def cmd_params(args) -> int:
    prm = _params(args)
    fields = prm.as_dict()
    if args.json:
        print(json.dumps(fields))
    else:
        for key, value in fields.items():
            print(f"{key}={value}")
    return EXIT_OK


def cmd_encode(args) -> int:
    prm = _params(args)
    message = payload_from_bytes(_read(args.input), prm.payload_bits_total)
    _write(args.output, dump_grid(encode(prm, message), args.format))
    return EXIT_OK


def cmd_decode(args) -> int:
    prm = _params(args)
    grid = load_grid(_read(args.input), prm.n, args.format)
    _write(args.output, payload_to_bytes(decode(prm, grid)))
    return EXIT_OK


def cmd_verify(args) -> int:
    f = parse_f(args.f, args.n)
    if f <= 0:
        raise ParameterError(f"f must be positive, got {f}")
    grid = load_grid(_read(args.input), args.n, args.format)
    report = verify_membership(grid, f.numerator, f.denominator)
    if report.ok:
        print("OK")
        return EXIT_OK
    for v in report.violations:
        print(v)
    return EXIT_CORRUPT


def cmd_count(args) -> int:
    value = analysis.count_arrays(args.n, args.w, allow_large=args.allow_large)
    print(value)
    return EXIT_OK


def cmd_lemmas(args) -> int:
    reports = [analysis.check_lemma1(args.max_n), analysis.check_lemma2(args.max_n)]
    for rep in reports:
        print(rep)
    total = sum(len(r.counterexamples) for r in reports)
    print(f"{total} counterexamples")
    return EXIT_OK if total == 0 else EXIT_CORRUPT


def cmd_rates(args) -> int:
    try:
        ns = [int(x) for x in args.n.split(",") if x]
    except ValueError:
        raise UsageError(f"--n must be a comma-separated list of integers: {args.n!r}") from None
    entries = []
    for n in ns:
        f = parse_f(args.f, n)
        entries.append((n, f.numerator, f.denominator))
    report = analysis.rate_report(entries)
    print(report.to_json() if args.json else report.to_text())
    if not args.json:
        print("strictly increasing" if report.strictly_increasing() else "not strictly increasing")
    return EXIT_OK


def cmd_legacy_c(args) -> int:
    f = parse_f(args.f, args.n)
    if f <= 0:
        raise ParameterError(f"f must be positive, got {f}")
    legacy = analysis.legacy_c_bound(args.n, f.numerator, f.denominator)
    new = analysis.new_c_value(args.n, f.numerator, f.denominator)
    print(f"legacy_c={legacy if legacy is not None else 'none'} new_c={new}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="bounded2d", description="2D bounded-weight array codec")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def nf(p):
        p.add_argument("--n", type=int, required=True, help="array side")
        p.add_argument("--f", required=True, help="weight bound at n: P, P/Q or half")

    p = sub.add_parser("params", help="print derived code parameters")
    nf(p)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_params)

    for name, func, out in (("encode", cmd_encode, True), ("decode", cmd_decode, True),
                            ("verify", cmd_verify, False)):
        p = sub.add_parser(name)
        nf(p)
        p.add_argument("--in", dest="input", required=True, help="input file or -")
        if out:
            p.add_argument("--out", dest="output", required=True, help="output file or -")
        p.add_argument("--format", choices=("text", "bin"), default="text", help="grid file form")
        p.set_defaults(func=func)

    p = sub.add_parser("analyze", help="brute-force oracles and reports")
    asub = p.add_subparsers(dest="analysis", required=True, parser_class=_Parser)
    a = asub.add_parser("count", help="exact number of bounded n x n arrays")
    a.add_argument("--n", type=int, required=True)
    a.add_argument("--w", type=int, required=True)
    a.add_argument("--allow-large", action="store_true")
    a.set_defaults(func=cmd_count)
    a = asub.add_parser("lemmas", help="exhaustive swap-lemma checks")
    a.add_argument("--max-n", type=int, default=6)
    a.set_defaults(func=cmd_lemmas)
    a = asub.add_parser("rates", help="rate table over several n")
    a.add_argument("--f", required=True)
    a.add_argument("--n", required=True, help="comma-separated sides")
    a.add_argument("--json", action="store_true")
    a.set_defaults(func=cmd_rates)
    a = asub.add_parser("legacy-c", help="compare the two choices of c")
    a.add_argument("--n", type=int, required=True)
    a.add_argument("--f", required=True)
    a.set_defaults(func=cmd_legacy_c)
    return parser


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:  # --help, or a usage error already reported
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.func(args)
    except InfeasibleParametersError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_INFEASIBLE
    except CorruptCodewordError as exc:
        print(f"corrupt codeword: {exc}", file=sys.stderr)
        return EXIT_CORRUPT
    except (ParameterError, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

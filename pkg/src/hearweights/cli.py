"""Command line interface.

Exit codes: 0 ok, 1 selftest failure, 2 bad input, 3 spectral data
inconsistent with any weighted projective plane, 4 ambiguous recovery.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from itertools import combinations

from .errors import (
    AmbiguousRecoveryError,
    InconsistentInputError,
    InvalidWeightsError,
    NoApproximantError,
)
from .exact_arith import (
    DEFAULT_PRECISION,
    MIN_PRECISION,
    BigReal,
    default_tolerance,
    format_rational,
    primes_up_to,
    rationalize,
)
from .extremal import check_extremal, tau_sq_integral
from .heat import DEFAULT_MAX_DENOMINATOR, heat_coefficients
from .recovery import (
    SpectralInput,
    recover_from_bcd,
    recover_prime,
    recover_weights,
    recover_with_chi,
)
from .topology import (
    WeightTriple,
    chern_numbers,
    coprime_triples,
    orbifold_euler_characteristic,
    symmetric_functions,
)
from .trig import T_direct

EXIT_OK, EXIT_SELFTEST, EXIT_USAGE, EXIT_INCONSISTENT, EXIT_AMBIGUOUS = 0, 1, 2, 3, 4


def parse_rational(text: str, max_denominator: int, precision: int) -> Fraction:
    """``p/q`` is taken exactly; a decimal is rounded to its simplest nearby rational."""
    text = text.strip()
    if "/" in text:
        return Fraction(text)
    exact = Fraction(text)
    mantissa = text.lower().split("e")[0]
    digits = len(mantissa.split(".")[1]) if "." in mantissa else 0
    exponent = int(text.lower().split("e")[1]) if "e" in text.lower() else 0
    half_ulp = Fraction(1, 2 * 10 ** max(digits - exponent, 0))
    if exponent > digits:
        return exact
    tol = max(half_ulp, default_tolerance(precision))
    return rationalize(exact, max_denominator, tol)


def parse_real(text: str) -> Fraction:
    return Fraction(text.strip())


def _weights(args) -> WeightTriple:
    return WeightTriple(*args.weights)


def _emit(args, payload: dict, text_lines: list[str]) -> None:
    if args.output == "json":
        print(json.dumps(payload))
    else:
        print("\n".join(text_lines))


def cmd_forward(args) -> int:
    w = _weights(args)
    vol = parse_real(args.vol)
    if vol <= 0:
        raise ValueError("vol must be positive")
    prec = args.precision
    tau_sq = BigReal.of(args.tau_sq, prec) if args.tau_sq is not None else None
    T = T_direct(w, prec)
    heat = [heat_coefficients(w, vol, p, tau_sq, prec) for p in (0, 1)]
    chern = chern_numbers(w)
    payload = {
        "weights": w.as_list(),
        "vol": format_rational(vol),
        "precision": prec,
        "symmetric": symmetric_functions(w).to_json(),
        "chern": chern.to_json(),
        "T": T.to_json(),
        "tau_sq": (tau_sq_integral(w).to_json() if tau_sq is None
                   else {"decimal": tau_sq.decimal(), "route": "supplied"}),
        "heat": [h.to_json() for h in heat],
    }
    lines = [f"weights: {w.as_list()}",
             f"b = {chern.b}, c = {chern.c}, d = {chern.d}",
             f"T = {T.value.decimal()}" + (f" = {T.reconstructed}" if T.reconstructed is not None else "")]
    for h in heat:
        exact = f" = {h.a2_exact}" if h.a2_exact is not None else ""
        lines.append(f"p={h.p}: a0 = {h.a0.decimal()}, a1 = {h.a1.decimal()}, "
                     f"a2 = {h.a2.decimal()}{exact}")
    _emit(args, payload, lines)
    return EXIT_OK


def _spectral_from_json(doc: dict) -> tuple[str, str, str, str]:
    if "heat" in doc:
        by_degree = {h["p"]: h for h in doc["heat"]}
        try:
            h0, h1 = by_degree[0], by_degree[1]
        except KeyError:
            raise ValueError("JSON input needs heat entries for p = 0 and p = 1") from None
        return h0["a0"], h0["a1"], h0["a2"], h1["a2"]
    return doc["a0"], doc["a1"], doc["a2_0"], doc["a2_1"]


def _report_lines(report) -> list[str]:
    sym = report.symmetric
    return [f"weights: {report.weights.as_list()}",
            f"b = {report.b}, c = {report.c}, d = {report.d}",
            f"p = {sym.p}, q = {sym.q}, r = {sym.r}, s = {sym.s}",
            f"cubic roots: {report.cubic_roots}",
            f"smooth (degenerate cubic): {report.degenerate}"]


def cmd_recover(args) -> int:
    if args.values:
        if len(args.values) != 4:
            raise ValueError("recover needs exactly four values: a0 a1 a2_0 a2_1")
        values = args.values
    else:
        values = _spectral_from_json(json.load(sys.stdin))
    spec = SpectralInput.from_strings(*values, precision=args.precision,
                                      max_denominator=args.max_denominator)
    report = recover_weights(spec)
    _emit(args, report.to_json(), _report_lines(report))
    return EXIT_OK


def cmd_recover_prime(args) -> int:
    b = parse_rational(args.b, args.max_denominator, args.precision)
    w = recover_prime(b)
    _emit(args, {"weights": w.as_list(), "b": format_rational(b)},
          [f"weights: {w.as_list()}"])
    return EXIT_OK


def cmd_recover_chi(args) -> int:
    b = parse_rational(args.b, args.max_denominator, args.precision)
    chi = parse_rational(args.chi, args.max_denominator, args.precision)
    report = recover_with_chi(b, chi)
    _emit(args, report.to_json(), _report_lines(report))
    return EXIT_OK


def cmd_extremal_check(args) -> int:
    w = _weights(args)
    prec = args.precision
    a2_0 = BigReal.of(args.a2_0, prec)
    T = BigReal.of(args.T, prec) if args.T is not None else T_direct(w, prec).exact_or_value()
    rel_tol = parse_real(args.rel_tol)
    report = check_extremal(w, a2_0, T, rel_tol, prec)
    payload = {"weights": w.as_list(), **report.to_json()}
    _emit(args, payload, [f"weights: {w.as_list()}",
                          f"int tau^2 heard: {report.tau_sq_heard.decimal()}",
                          f"int tau^2 extremal: {report.tau_sq_extremal.decimal()}",
                          f"extremal: {report.extremal}"])
    return EXIT_OK


def _check_triple(triple: tuple[int, int, int]) -> list[str]:
    """Round-trip one ordered triple through both exact recovery routes."""
    w = WeightTriple(*triple)
    chern = chern_numbers(w)
    failures = []
    try:
        if recover_from_bcd(chern.b, chern.c, chern.d).weights != w:
            failures.append(f"{triple}: recover_from_bcd returned the wrong triple")
        if recover_with_chi(chern.b, orbifold_euler_characteristic(w)).weights != w:
            failures.append(f"{triple}: recover_with_chi returned the wrong triple")
    except (InconsistentInputError, AmbiguousRecoveryError) as exc:
        failures.append(f"{triple}: {exc}")
    return failures


def _check_primes(triple: tuple[int, int, int]) -> list[str]:
    w = WeightTriple(*triple)
    try:
        if recover_prime(chern_numbers(w).b) != w:
            return [f"{triple}: recover_prime returned the wrong triple"]
    except InconsistentInputError as exc:
        return [f"{triple}: {exc}"]
    return []


def cmd_selftest(args) -> int:
    triples = list(coprime_triples(args.bound, ordered=True))
    prime_triples = list(combinations(primes_up_to(args.bound), 3))
    if args.workers > 1:
        with ProcessPoolExecutor(args.workers) as pool:
            results = list(pool.map(_check_triple, triples, chunksize=256))
            prime_results = list(pool.map(_check_primes, prime_triples, chunksize=64))
    else:
        results = [_check_triple(t) for t in triples]
        prime_results = [_check_primes(t) for t in prime_triples]
    failures = sorted(f for batch in results + prime_results for f in batch)
    for line in failures:
        print(line, file=sys.stderr)
    payload = {"bound": args.bound, "triples": len(triples),
               "prime_triples": len(prime_triples), "failures": len(failures)}
    _emit(args, payload, [f"triples: {len(triples)}, failures: "
                          f"{sum(len(r) for r in results)}",
                          f"prime triples: {len(prime_triples)}, failures: "
                          f"{sum(len(r) for r in prime_results)}"])
    return EXIT_SELFTEST if failures else EXIT_OK


def _precision(text: str) -> int:
    value = int(text)
    if value < MIN_PRECISION:
        raise argparse.ArgumentTypeError(f"precision must be at least {MIN_PRECISION}")
    return value


def _max_denominator(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("max-denominator must be at least 1")
    return value


def _common_flags() -> argparse.ArgumentParser:
    # a fresh copy per parser: parents share action objects, and set_defaults
    # on the top-level parser would otherwise leak into every subcommand
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--precision", type=_precision, default=argparse.SUPPRESS,
                        help=f"working precision in bits (default {DEFAULT_PRECISION})")
    common.add_argument("--max-denominator", type=_max_denominator, default=argparse.SUPPRESS,
                        help=f"rational reconstruction bound (default {DEFAULT_MAX_DENOMINATOR})")
    common.add_argument("--rel-tol", default=argparse.SUPPRESS,
                        help="relative tolerance of the extremal test (default 1e-9)")
    common.add_argument("--output", choices=("json", "text"), default=argparse.SUPPRESS)
    return common


def build_parser() -> argparse.ArgumentParser:
    # global flags are accepted before or after the subcommand
    parser = argparse.ArgumentParser(
        prog="hearweights", parents=[_common_flags()],
        description="Heat invariants of weighted projective planes CP^2(N1,N2,N3) "
                    "and recovery of the weights from them.")
    parser.set_defaults(precision=DEFAULT_PRECISION, max_denominator=DEFAULT_MAX_DENOMINATOR,
                        rel_tol="1e-9", output="json")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("forward", parents=[_common_flags()], help="heat invariants for given weights")
    p.add_argument("weights", type=int, nargs=3, metavar="N")
    p.add_argument("--vol", default="1", help="volume, as p/q or decimal (default 1)")
    p.add_argument("--tau-sq", default=None,
                   help="int tau^2 of a non-extremal metric (default: extremal value)")
    p.set_defaults(func=cmd_forward)

    p = sub.add_parser("recover", parents=[_common_flags()],
                       help="weights from a0, a1, a2(functions), a2(1-forms); "
                            "reads forward's JSON from stdin when no values are given")
    p.add_argument("values", nargs="*", metavar="VALUE")
    p.set_defaults(func=cmd_recover)

    p = sub.add_parser("recover-prime", parents=[_common_flags()], help="prime weights from b alone")
    p.add_argument("b")
    p.set_defaults(func=cmd_recover_prime)

    p = sub.add_parser("recover-chi", parents=[_common_flags()],
                       help="weights from b and the orbifold Euler characteristic")
    p.add_argument("b")
    p.add_argument("chi")
    p.set_defaults(func=cmd_recover_chi)

    p = sub.add_parser("extremal-check", parents=[_common_flags()],
                       help="is a2 on functions that of the extremal metric?")
    p.add_argument("weights", type=int, nargs=3, metavar="N")
    p.add_argument("a2_0")
    p.add_argument("--T", default=None, help="trigonometric sum (default: computed)")
    p.set_defaults(func=cmd_extremal_check)

    p = sub.add_parser("selftest", parents=[_common_flags()], help="exhaustive round-trip sweeps")
    p.add_argument("--bound", type=int, default=50)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InvalidWeightsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except AmbiguousRecoveryError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_AMBIGUOUS
    except (InconsistentInputError, NoApproximantError) as exc:
        print(f"inconsistent input: {exc}", file=sys.stderr)
        return EXIT_INCONSISTENT
    except (ValueError, KeyError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

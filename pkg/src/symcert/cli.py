"""Command-line interface.

Commands: compute, certify, verify-theorem, gap-check, analytic-check,
explore-ap, bench.  Exit codes: 0 = success/pass, 1 = a check failed
(integral value, failed inequality, incomplete coverage), 2 = bad
arguments.  JSON output is deterministic for a fixed configuration
except for the "meta" object (timings, environment); CSV is emitted for
tabular reports; human format is best-effort and out of the contract.
"""

from __future__ import annotations

import argparse
import csv
import io
import math
import os
import sys
import time
from dataclasses import dataclass
from typing import Optional

from . import serialize
from .certify import (
    Certificate,
    CounterexampleFound,
    DEFAULT_DIGIT_BUDGET,
    IncompleteCoverage,
    analytic_region_check,
    dispatch_certificate,
    explore_ap,
    validate,
    verify_theorem,
)
from .errors import DomainError, PrecisionError, SieveRangeError
from .primes import DEFAULT_SIEVE_LIMIT, Sieve, gap_check, sieve_upto
from .rational import Rat
from .symfunc import esym, esym_bruteforce, esym_newton

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2

SIEVE_LIMIT_ENV = "SYMCERT_SIEVE_LIMIT"


@dataclass
class RunConfig:
    command: str
    output_format: str
    output_path: Optional[str]
    sieve_limit: int
    workers: int
    precision_bits: int
    figures_dir: Optional[str]


def _default_sieve_limit() -> int:
    env = os.environ.get(SIEVE_LIMIT_ENV)
    if env:
        try:
            v = int(env)
            if v >= 2:
                return v
        except ValueError:
            pass
        print(
            f"warning: ignoring invalid {SIEVE_LIMIT_ENV}={env!r}", file=sys.stderr
        )
    return DEFAULT_SIEVE_LIMIT


def _config(args: argparse.Namespace) -> RunConfig:
    return RunConfig(
        command=args.command,
        output_format=args.format,
        output_path=args.out,
        sieve_limit=args.sieve_limit,
        workers=args.workers,
        precision_bits=args.precision_bits,
        figures_dir=getattr(args, "figures", None),
    )


def _build_sieve(cfg: RunConfig, needed_limit: int) -> Sieve:
    """Sieve at the configured limit, auto-extended (with a warning)
    when the command needs more."""
    limit = cfg.sieve_limit
    if needed_limit > limit:
        print(
            f"warning: sieve limit raised {limit} -> {needed_limit} to cover "
            "this command's prime queries",
            file=sys.stderr,
        )
        limit = needed_limit
    return sieve_upto(limit)


def _sieve_covering_nth_prime(cfg: RunConfig, i: int) -> Sieve:
    """Sieve guaranteed to contain p_i (auto-extends as needed)."""
    if i < 6:
        needed = 13
    else:
        needed = int(i * (math.log(i) + math.log(math.log(i)))) + 10
    s = _build_sieve(cfg, needed)
    while len(s.primes) < i:  # the analytic bound failed us; widen anyway
        bigger = int(s.limit * 1.5) + 1
        print(
            f"warning: sieve limit raised {s.limit} -> {bigger} to reach p_{i}",
            file=sys.stderr,
        )
        s = sieve_upto(bigger)
    return s


def _emit(text: str, cfg: RunConfig) -> None:
    if cfg.output_path:
        with open(cfg.output_path, "w", encoding="utf-8") as fh:
            fh.write(text)
        print(f"wrote {cfg.output_path}", file=sys.stderr)
    else:
        sys.stdout.write(text)


def _csv_text(rows: list[list[str]]) -> str:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    return buf.getvalue()


def _note_figures(paths: list[str]) -> None:
    for p in paths:
        print(f"figure: {p}", file=sys.stderr)


# ---------------------------------------------------------------------------
# Command handlers


def cmd_compute(args: argparse.Namespace) -> int:
    cfg = _config(args)
    try:
        t0 = time.perf_counter()
        value = esym(args.k, args.n)
        elapsed = time.perf_counter() - t0
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if cfg.output_format == "json":
        doc = serialize.wrap(
            serialize.value_doc(args.k, args.n, value), serialize.make_meta(elapsed)
        )
        _emit(serialize.dumps(doc), cfg)
    elif cfg.output_format == "csv":
        rows = [
            ["k", "n", "num", "den"],
            [str(args.k), str(args.n), str(value.numerator), str(value.denominator)],
        ]
        _emit(_csv_text(rows), cfg)
    else:
        _emit(f"{value}\n", cfg)
    return EXIT_OK


def _certificate_human(cert: Certificate, ok: bool) -> str:
    lines = [
        f"S({cert.k},{cert.n}): certified non-integral via {cert.kind.value}",
        f"  payload: {cert.payload}",
        f"  validate: {'pass' if ok else 'FAIL'}",
    ]
    return "\n".join(lines) + "\n"


def cmd_certify(args: argparse.Namespace) -> int:
    cfg = _config(args)
    k, n = args.k, args.n
    if not 1 <= k <= n:
        print(f"error: need 1 <= k <= n, got k={k}, n={n}", file=sys.stderr)
        return EXIT_USAGE
    if n < 4 and not args.allow_small:
        print(
            f"error: n={n} < 4 is outside the theorem; pass --allow-small "
            "for fixture values",
            file=sys.stderr,
        )
        return EXIT_USAGE
    if cfg.output_format == "csv":
        print("error: certificates are emitted as JSON (or human)", file=sys.stderr)
        return EXIT_USAGE
    s = _build_sieve(cfg, n)
    t0 = time.perf_counter()
    try:
        cert = dispatch_certificate(
            k, n, s, precision=cfg.precision_bits, digit_budget=args.digit_budget
        )
    except CounterexampleFound as cex:
        elapsed = time.perf_counter() - t0
        if cfg.output_format == "json":
            report = {
                "schema": "symcert.integral-value/1",
                "k": str(k),
                "n": str(n),
                "integral": True,
                "value": str(cex.value),
            }
            _emit(serialize.dumps(serialize.wrap(report, serialize.make_meta(elapsed))), cfg)
        else:
            _emit(f"S({k},{n}) = {cex.value} is an integer (no certificate)\n", cfg)
        return EXIT_FAIL
    elapsed = time.perf_counter() - t0
    ok = validate(cert, s)
    if cfg.output_format == "json":
        report = serialize.certificate_to_jsonable(cert)
        report["validated"] = ok
        _emit(serialize.dumps(serialize.wrap(report, serialize.make_meta(elapsed))), cfg)
    else:
        _emit(_certificate_human(cert, ok), cfg)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_verify_theorem(args: argparse.Namespace) -> int:
    cfg = _config(args)
    if not 4 <= args.n_lo <= args.n_hi:
        print(
            f"error: need 4 <= n_lo <= n_hi, got [{args.n_lo}, {args.n_hi}]",
            file=sys.stderr,
        )
        return EXIT_USAGE
    collect = {"auto": "auto", "inline": True, "none": False}[args.certificates]
    s = _build_sieve(cfg, (args.n_hi + 1) // 2)

    def progress(done_n: int, total_n: int) -> None:
        if not args.quiet:
            print(f"  ... swept n <= {done_n} of {total_n}", file=sys.stderr)

    try:
        report = verify_theorem(
            args.n_lo,
            args.n_hi,
            s,
            k_max=args.k_max,
            workers=cfg.workers,
            precision=cfg.precision_bits,
            digit_budget=args.digit_budget,
            collect=collect,
            progress=progress if cfg.workers > 1 else None,
        )
        incomplete_exit = False
    except IncompleteCoverage as inc:
        report = inc.report
        incomplete_exit = True
        print(f"error: {inc}", file=sys.stderr)
    include_certs = args.certificates != "none" and report.certificates is not None
    if cfg.output_format == "json":
        doc = serialize.wrap(
            serialize.theorem_report_doc(report, include_certs),
            serialize.make_meta(report.elapsed, workers=report.workers),
        )
        _emit(serialize.dumps(doc), cfg)
    elif cfg.output_format == "csv":
        _emit(_csv_text(serialize.theorem_csv_rows(report)), cfg)
    else:
        lines = [
            f"n in [{report.n_lo}, {report.n_hi}], k policy: {report.k_policy}",
            f"pairs: {report.pair_count}   validated: {report.validated_count}",
            "methods: "
            + "  ".join(f"{k}={v}" for k, v in report.method_counts.items()),
            f"all non-integral: {report.all_nonintegral}",
        ]
        if report.counterexamples:
            lines.append(f"counterexamples: {report.counterexamples}")
        if report.validation_failures:
            lines.append(f"validation failures: {report.validation_failures}")
        _emit("\n".join(lines) + "\n", cfg)
    if cfg.figures_dir:
        from . import figures

        _note_figures(figures.render_theorem_figures(report, cfg.figures_dir))
    return EXIT_OK if (report.all_nonintegral and not incomplete_exit) else EXIT_FAIL


def cmd_gap_check(args: argparse.Namespace) -> int:
    cfg = _config(args)
    if args.k < 1 or args.i_lo < 1 or args.i_lo > args.i_hi:
        print("error: need k >= 1 and 1 <= i_lo <= i_hi", file=sys.stderr)
        return EXIT_USAGE
    s = _sieve_covering_nth_prime(cfg, args.i_hi + 1)
    t0 = time.perf_counter()
    result = gap_check(s, args.k, args.i_lo, args.i_hi)
    elapsed = time.perf_counter() - t0
    if cfg.output_format == "json":
        doc = serialize.wrap(serialize.gap_report_doc(result), serialize.make_meta(elapsed))
        _emit(serialize.dumps(doc), cfg)
    elif cfg.output_format == "csv":
        _emit(_csv_text(serialize.gap_csv_rows(result, s.primes)), cfg)
    else:
        verdict = "pass" if result.all_pass else f"FAIL at {list(result.failures)}"
        _emit(
            f"gap check k={result.k}, i in [{result.i_lo}, {result.i_hi}]: "
            f"{verdict} ({result.checked} checks; tightest i={result.tightest_i}: "
            f"{result.tightest_lhs} < {result.tightest_rhs})\n",
            cfg,
        )
    if cfg.figures_dir:
        from . import figures

        _note_figures(figures.render_gap_figures(result, s, cfg.figures_dir))
    return EXIT_OK if result.all_pass else EXIT_FAIL


def cmd_analytic_check(args: argparse.Namespace) -> int:
    cfg = _config(args)
    t0 = time.perf_counter()
    try:
        report = analytic_region_check(
            precision=cfg.precision_bits, grid_points=args.grid_points
        )
    except PrecisionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    elapsed = time.perf_counter() - t0
    signs_ok = (
        report.f_at_300000.sign > 0
        and report.g_at_300000.sign > 0
        and all(c.sign > 0 for c in report.f_prime_grid)
        and all(c.sign > 0 for c in report.g_prime_grid)
    )
    all_ok = signs_ok and report.dominance_threshold_check and report.region_covers_threshold
    if cfg.output_format == "json":
        doc = serialize.wrap(
            serialize.analytic_report_doc(report), serialize.make_meta(elapsed)
        )
        _emit(serialize.dumps(doc), cfg)
    elif cfg.output_format == "csv":
        _emit(_csv_text(serialize.analytic_csv_rows(report)), cfg)
    else:
        lines = [
            f"f(300000) in [{report.f_at_300000.lo}, {report.f_at_300000.hi}]: "
            f"{'positive' if report.f_at_300000.sign > 0 else 'NOT positive'}",
            f"g(300000) in [{report.g_at_300000.lo}, {report.g_at_300000.hi}]: "
            f"{'positive' if report.g_at_300000.sign > 0 else 'NOT positive'}",
            f"derivative grid ({report.grid_points} points): "
            f"{'all positive' if signs_ok else 'sign failures'}",
            f"inequality threshold check: {report.dominance_threshold_check} "
            f"(holds at t={report.rounded_t_threshold}, fails at t=3.4)",
            f"threshold t* in [{report.t_star_lo}, {report.t_star_hi}]",
            f"n*: derived {report.n_star_derived}, from rounded t "
            f"{report.n_star_from_rounded_t} (expected {report.expected_n_threshold})",
            f"region n >= {report.region_n_min} covers threshold: "
            f"{report.region_covers_threshold}",
        ]
        _emit("\n".join(lines) + "\n", cfg)
    if cfg.figures_dir:
        from . import figures

        _note_figures(figures.render_analytic_figures(report, cfg.figures_dir))
    return EXIT_OK if all_ok else EXIT_FAIL


def cmd_explore_ap(args: argparse.Namespace) -> int:
    cfg = _config(args)
    t0 = time.perf_counter()
    try:
        hits = explore_ap(args.a, args.m, args.n_max, args.k_max)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    elapsed = time.perf_counter() - t0
    if cfg.output_format == "json":
        doc = serialize.wrap(
            serialize.ap_report_doc(args.a, args.m, args.n_max, args.k_max, hits),
            serialize.make_meta(elapsed),
        )
        _emit(serialize.dumps(doc), cfg)
    elif cfg.output_format == "csv":
        _emit(_csv_text(serialize.ap_csv_rows(hits)), cfg)
    else:
        if not hits:
            _emit("no integral values found\n", cfg)
        else:
            body = "\n".join(
                f"k={h.k} n={h.n} (terms 1/({args.a}+i*{args.m}), i=0..{h.n}): "
                f"value {h.value}"
                for h in hits
            )
            _emit(body + "\n", cfg)
    return EXIT_OK


def cmd_bench(args: argparse.Namespace) -> int:
    cfg = _config(args)
    cases = []
    timings = {}

    def run(name: str, fn, *fn_args):
        best = None
        for _ in range(max(1, args.repeat)):
            t0 = time.perf_counter()
            out = fn(*fn_args)
            dt = time.perf_counter() - t0
            best = dt if best is None else min(best, dt)
        timings[name] = round(best, 6)
        return out

    k, n = args.k, args.n
    value = run(f"esym({k},{n})", esym, k, n)
    run(f"esym_newton({k},{n})", esym_newton, k, n)
    if n <= 20:
        run(f"esym_bruteforce({k},{n})", esym_bruteforce, k, n)
    run(f"sieve_upto({cfg.sieve_limit})", sieve_upto, cfg.sieve_limit)
    cases.append(
        {
            "k": str(k),
            "n": str(n),
            "den_digits": str(len(str(value.denominator))),
            "repeat": str(max(1, args.repeat)),
        }
    )
    report = {"schema": "symcert.bench/1", "cases": cases}
    if cfg.output_format == "json":
        _emit(serialize.dumps(serialize.wrap(report, serialize.make_meta(**{"timings": timings}))), cfg)
    elif cfg.output_format == "csv":
        rows = [["name", "seconds"]] + [[k_, str(v)] for k_, v in timings.items()]
        _emit(_csv_text(rows), cfg)
    else:
        body = "\n".join(f"{name}: {secs:.6f}s" for name, secs in timings.items())
        _emit(body + "\n", cfg)
    return EXIT_OK


# ---------------------------------------------------------------------------
# Parser


def _add_common(p: argparse.ArgumentParser, default_format: str = "json",
                figures: bool = False) -> None:
    p.add_argument(
        "--format", choices=["json", "csv", "human"], default=default_format
    )
    p.add_argument("--out", metavar="PATH", default=None)
    p.add_argument(
        "--sieve-limit", type=int, default=_default_sieve_limit(), metavar="N"
    )
    p.add_argument(
        "--workers", type=int, default=max(1, os.cpu_count() or 1), metavar="N"
    )
    p.add_argument("--precision-bits", type=int, default=64, metavar="B")
    if figures:
        p.add_argument(
            "--figures",
            metavar="DIR",
            default=None,
            help="also render matplotlib figures into DIR",
        )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="symcert",
        description=(
            "Exact computation and non-integrality certification of the "
            "elementary symmetric functions S(k,n) of 1, 1/2, ..., 1/n."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="print exact S(k,n)")
    p.add_argument("k", type=int)
    p.add_argument("n", type=int)
    _add_common(p, default_format="human")
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("certify", help="emit a non-integrality certificate")
    p.add_argument("k", type=int)
    p.add_argument("n", type=int)
    p.add_argument("--allow-small", action="store_true",
                   help="permit n < 4 fixture values")
    p.add_argument("--digit-budget", type=int, default=DEFAULT_DIGIT_BUDGET)
    _add_common(p)
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("verify-theorem", help="certify a whole n-range")
    p.add_argument("n_lo", type=int)
    p.add_argument("n_hi", type=int)
    p.add_argument("--k-max", type=int, default=None,
                   help="cap k per n (default: k runs to n)")
    p.add_argument("--certificates", choices=["auto", "inline", "none"],
                   default="auto",
                   help="include the certificate array in JSON output")
    p.add_argument("--digit-budget", type=int, default=DEFAULT_DIGIT_BUDGET)
    p.add_argument("--quiet", action="store_true")
    _add_common(p, figures=True)
    p.set_defaults(func=cmd_verify_theorem)

    p = sub.add_parser("gap-check", help="check k*p(i+1) < (k+4)*p(i) on a range")
    p.add_argument("k", type=int)
    p.add_argument("i_lo", type=int)
    p.add_argument("i_hi", type=int)
    _add_common(p, figures=True)
    p.set_defaults(func=cmd_gap_check)

    p = sub.add_parser("analytic-check", help="directed-rounding sign checks")
    p.add_argument("--grid-points", type=int, default=32)
    _add_common(p, figures=True)
    p.set_defaults(func=cmd_analytic_check)

    p = sub.add_parser("explore-ap",
                       help="search 1/(a+i*m) families for integral values")
    p.add_argument("a", type=int)
    p.add_argument("m", type=int)
    p.add_argument("n_max", type=int)
    p.add_argument("k_max", type=int)
    _add_common(p)
    p.set_defaults(func=cmd_explore_ap)

    p = sub.add_parser("bench", help="micro-benchmarks of the engines")
    p.add_argument("--k", type=int, default=12)
    p.add_argument("--n", type=int, default=300)
    p.add_argument("--repeat", type=int, default=1)
    _add_common(p, default_format="human")
    p.set_defaults(func=cmd_bench)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.precision_bits < 53:
        parser.error(f"--precision-bits must be >= 53, got {args.precision_bits}")
    if args.sieve_limit < 2:
        parser.error(f"--sieve-limit must be >= 2, got {args.sieve_limit}")
    if args.workers < 1:
        parser.error(f"--workers must be >= 1, got {args.workers}")
    try:
        return args.func(args)
    except SieveRangeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())

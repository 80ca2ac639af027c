"""Command-line entry point: ``selmer-stability <subcommand> ...``.

Exit codes: 0 success, 1 other toolkit error, 2 configuration error,
3 missing trace data, 4 hypothesis violation.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from dataclasses import replace
from pathlib import Path

from . import census, gl2_density, levels, local_cohomology, omega, stability
from .config import ConfigError, RunConfig, load_config, parse_int
from .errors import HypothesisViolated, InvalidParameter, MissingTrace, SelmerToolError
from .report import ReportError, render, run_report

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_CONFIG = 2
EXIT_DATA = 3
EXIT_HYPOTHESIS = 4


def _int(text: str) -> int:
    try:
        return parse_int(text)
    except ConfigError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _int_list(text: str) -> list[int]:
    return [_int(s) for s in text.split(",") if s.strip()]


def _table(header, rows, fmt: str) -> str:
    if fmt == "json":
        return json.dumps([dict(zip(header, row)) for row in rows], indent=2) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _emit(text: str, path: str | None) -> None:
    if path:
        Path(path).write_text(text)
    else:
        sys.stdout.write(text)


def _spec(args):
    """Spec from ``--spec FILE`` or from inline ``--p/--conductor/--curve|--trace-table``."""
    if args.spec:
        if args.curve or args.trace_table:
            raise ConfigError("--spec cannot be combined with --curve/--trace-table")
        return load_config(args.spec).spec
    if args.p is None or args.conductor is None:
        raise ConfigError("give --spec FILE, or --p and --conductor with --curve or --trace-table")
    config = RunConfig(
        p=args.p,
        conductor=args.conductor,
        curve=args.curve,
        trace_table=Path(args.trace_table) if args.trace_table else None,
        surjective=args.surjective,
    )
    return config.spec


def cmd_density(args) -> int:
    rep = gl2_density.omega_density_bruteforce(args.p, max_p=args.max_p)
    _emit(_table(gl2_density.CSV_HEADER, [rep.csv_row()], args.out), args.output)
    return EXIT_OK


def cmd_sieve(args) -> int:
    spec = _spec(args)
    result = omega.sieve_omega(spec, args.bound, args.workers)
    rows = [c.csv_row() for c in result.classifications]
    _emit(_table(omega.CSV_HEADER, rows, args.out), args.csv or args.output)
    print(
        f"# omega primes <= {args.bound}: {len(result.primes)}; unknown: {len(result.unknown)}",
        file=sys.stderr,
    )
    return EXIT_OK


def cmd_census(args) -> int:
    spec = _spec(args)
    primes = census.omega_primes(spec, args.max, args.workers)
    delta = args.delta if args.delta is not None else gl2_density.omega_density_closed_form(spec.p)
    ys = [y for y in (args.checkpoints or [args.max]) if y <= args.max]
    rows = []
    for y in ys:
        m = census.count_squarefree_smooth(primes, y)
        ratio = f"{census.serre_ratio(m, y, delta):.6f}" if y >= 2 else ""
        rows.append([y, m, ratio])
    _emit(_table(["Y", "M_omega", "ratio"], rows, args.out), args.csv or args.output)
    return EXIT_OK


def cmd_levels(args) -> int:
    spec = _spec(args)
    result = levels.enumerate_admissible(spec, args.max, args.workers)
    rows = [c.csv_row() for c in result.checks]
    _emit(_table(levels.CSV_HEADER, rows, args.out), args.csv or args.output)
    print(f"# n(rho; {args.max}) = {result.n}; unknown: {len(result.unknown)}", file=sys.stderr)
    return EXIT_OK


def cmd_beta(args) -> int:
    q = args.p**args.prec
    data = local_cohomology.LocalRepData(
        args.p,
        args.prec,
        args.ell,
        local_cohomology.parse_matrix(args.sigma, q),
        local_cohomology.parse_matrix(args.tau, q),
    )
    inv = local_cohomology.inertia_invariants(data)
    divisors = ",".join(str(e) for e in inv.divisors)
    frob = ";".join(",".join(str(x) for x in row) for row in inv.frob_action)
    lines = [
        f"divisors: {divisors}",
        f"quotient_dim: {inv.quotient_dim}",
        f"frob_action: {frob or '-'}",
        f"beta_bound: {inv.beta_bound}",
    ]
    _emit("\n".join(lines) + "\n", args.output)
    return EXIT_OK


def cmd_certify(args) -> int:
    spec = _spec(args)
    verdict = stability.stability_certificate(spec, args.level)
    lines = [f"level: {verdict.level}", f"verdict: {'certified' if verdict.certified else 'not certified'}"]
    lines += [f"reason: {r}" for r in verdict.reasons]
    _emit("\n".join(lines) + "\n", args.output)
    return EXIT_OK


def cmd_ledger(args) -> int:
    data = stability.load_ledger(args.input)
    lower, upper = stability.selmer_dim_bounds(data)
    lines = [
        f"wiles: {stability.wiles_ledger(data)}",
        f"selmer_lower: {lower}",
        f"selmer_upper: {upper}",
    ]
    _emit("\n".join(lines) + "\n", args.output)
    return EXIT_OK


def cmd_report(args) -> int:
    config = load_config(args.config)
    fmt = args.out or config.fmt
    workers = args.workers if args.workers is not None else config.workers
    if workers != config.workers:
        config = replace(config, workers=workers)
    doc = run_report(config)
    target = args.output or (str(config.output) if config.output else None)
    _emit(render(doc, fmt), target)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="selmer-stability", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help_text, fmt_default="csv"):
        sp = sub.add_parser(name, help=help_text)
        sp.set_defaults(func=fn)
        sp.add_argument("--out", choices=["csv", "json"], default=fmt_default, help="output format")
        sp.add_argument("--output", help="write to this path instead of stdout")
        return sp

    sp = add("density", cmd_density, "brute-force Omega density in GL2(F_p)")
    sp.add_argument("--p", type=_int, required=True)
    sp.add_argument("--max-p", type=_int, default=gl2_density.DEFAULT_MAX_P)

    def add_spec(sp):
        sp.add_argument("--spec", help="config file naming the residual representation")
        sp.add_argument("--p", type=_int)
        sp.add_argument("--conductor", type=_int)
        sp.add_argument("--curve", help="a1,a2,a3,a4,a6")
        sp.add_argument("--trace-table")
        sp.add_argument("--surjective", action="store_true")

    sp = add("sieve", cmd_sieve, "classify primes up to a bound")
    add_spec(sp)
    sp.add_argument("--bound", type=_int, required=True)
    sp.add_argument("--csv")
    sp.add_argument("--workers", type=_int, default=1)

    sp = add("census", cmd_census, "count squarefree Omega-smooth integers")
    add_spec(sp)
    sp.add_argument("--max", type=_int, required=True)
    sp.add_argument("--checkpoints", type=_int_list)
    sp.add_argument("--delta", type=Fraction, help="exponent delta, e.g. 1/9 (default: the Omega density)")
    sp.add_argument("--csv")
    sp.add_argument("--workers", type=_int, default=1)

    sp = add("levels", cmd_levels, "Carayol-admissible levels up to X")
    add_spec(sp)
    sp.add_argument("--max", type=_int, required=True)
    sp.add_argument("--csv")
    sp.add_argument("--workers", type=_int, default=1)

    sp = add("beta", cmd_beta, "inertia invariants and the beta_ell upper bound")
    sp.add_argument("--p", type=_int, required=True)
    sp.add_argument("--ell", type=_int, required=True)
    sp.add_argument("--prec", type=_int, default=local_cohomology.DEFAULT_PRECISION)
    sp.add_argument("--sigma", required=True, help="a,b,c,d (row-major); write --sigma=-5,0,0,-1 when an entry leads with a minus")
    sp.add_argument("--tau", required=True, help="a,b,c,d (row-major); write --sigma=-5,0,0,-1 when an entry leads with a minus")

    sp = add("certify", cmd_certify, "stability certificate for a raised level")
    add_spec(sp)
    sp.add_argument("--level", type=_int, required=True)

    sp = add("ledger", cmd_ledger, "Wiles-formula bookkeeping from a dimension file")
    sp.add_argument("--input", required=True)

    sp = add("report", cmd_report, "full pipeline report", fmt_default=None)
    sp.add_argument("--config", "--spec", dest="config", required=True)
    sp.add_argument("--workers", type=_int)
    return parser


def _exit_code(exc: SelmerToolError) -> int:
    if isinstance(exc, ReportError):
        exc = exc.cause
    if isinstance(exc, (ConfigError, InvalidParameter)):
        return EXIT_CONFIG
    if isinstance(exc, MissingTrace):
        return EXIT_DATA
    if isinstance(exc, HypothesisViolated):
        return EXIT_HYPOTHESIS
    return EXIT_ERROR


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SelmerToolError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return _exit_code(exc)


if __name__ == "__main__":
    sys.exit(main())

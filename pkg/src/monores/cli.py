"""``monores`` command line.

Exit status: 0 on success, 1 on usage or parse errors, 2 when a size guard
trips.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import json
import secrets
import sys
from pathlib import Path

from . import analytic, experiments
from .errors import GuardError, UsageError
from .linalg import CoefficientField
from .monomial import format_ideal, krull_dimension, parse_ideal
from .resolution import METHODS, betti_table
from .sampler import ModelParams, sample_ideal
from .scarf import (find_witness_sets, is_generic, is_scarf, is_strongly_generic,
                    scarf_complex)

HELP_WIDTH = 88


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _fmt(prog):
    return argparse.HelpFormatter(prog, width=HELP_WIDTH)


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc


def _load_ideal(args):
    if args.file is not None:
        return parse_ideal(_read_text(args.file))
    missing = [f for f in ("n", "D", "p") if getattr(args, f) is None]
    if missing:
        raise UsageError("give an ideal file or all of --n, --D, --p")
    if args.seed is None:
        raise UsageError("sampling here needs --seed")
    return sample_ideal(ModelParams(args.n, args.D, args.p, args.seed))


def _field(args) -> CoefficientField:
    try:
        return CoefficientField(args.field)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _add_ideal_source(p):
    p.add_argument("file", nargs="?", help="ideal file ('-' for stdin)")
    p.add_argument("--n", type=int, help="variables (when sampling)")
    p.add_argument("--D", type=int, help="degree (when sampling)")
    p.add_argument("--p", help="probability as an exact decimal or fraction (when sampling)")
    p.add_argument("--seed", type=int, help="64-bit seed (when sampling)")


def _add_field(p):
    p.add_argument("--field", type=int, default=0,
                   help="coefficient characteristic: 0 or a prime (default 0)")
    p.add_argument("--method", choices=METHODS, default="auto",
                   help="Betti engine (default auto)")


def cmd_sample(args, out):
    seed = args.seed if args.seed is not None else secrets.randbits(64)
    M = sample_ideal(ModelParams(args.n, args.D, args.p, seed))
    out.write(f"# seed={seed}\n")
    out.write(format_ideal(M))


def analyze_record(M, field=CoefficientField(0), method="auto") -> dict:
    table = betti_table(M, field, method)
    dim = krull_dimension(M)
    report = find_witness_sets(M)
    return {
        "n": M.n,
        "r": M.r,
        "pdim": table.pdim,
        "dim": dim,
        "cm": dim == M.n - table.pdim,
        "scarf": is_scarf(M, field, table=table),
        "generic": is_generic(M),
        "strongly_generic": is_strongly_generic(M),
        "witness_sets": len(report.witness_sets),
        "nonscarf_pairs": len(report.nonscarf_pairs),
        "betti": list(table.totals),
    }


def cmd_analyze(args, out):
    M = _load_ideal(args)
    rec = analyze_record(M, _field(args), args.method)
    out.write(json.dumps(rec, separators=(",", ":")) + "\n")


def cmd_betti(args, out):
    table = betti_table(_load_ideal(args), _field(args), args.method)
    out.write(table.totals_line() + "\n" if args.totals else table.to_csv())


def cmd_scarf(args, out):
    M = _load_ideal(args)
    sc = scarf_complex(M, args.method)
    out.write("face,multidegree\n")
    for F in sorted(sc.faces, key=lambda F: (len(F), F)):
        out.write(f"{'-'.join(map(str, F))},{'-'.join(map(str, sc.face_multidegrees[F]))}\n")
    out.write("f_vector," + ",".join(map(str, sc.f_vector)) + "\n")


def cmd_witness(args, out):
    M = _load_ideal(args)
    out.write(find_witness_sets(M).to_csv(M))


def cmd_formulas(args, out):
    a_values = None
    if args.a:
        try:
            a_values = [int(x) for x in args.a.split(",")]
        except ValueError as exc:
            raise UsageError(f"--a expects comma-separated integers, got {args.a!r}") from exc
    rows = analytic.formula_rows(args.n, args.D, args.p, a_values)
    w = csv.DictWriter(out, fieldnames=analytic.FORMULA_COLUMNS, lineterminator="\n")
    w.writeheader()
    w.writerows(rows)


def _config(args) -> experiments.ExperimentConfig:
    if args.config:
        cfg = experiments.read_config(args.config)
    else:
        if args.seed is None:
            raise UsageError("--seed is required for sweeps")
        if not args.n or not args.D or args.trials is None:
            raise UsageError("give --config, or --n, --D, --trials with --p or --c/--e")
        cells = experiments.build_grid(
            experiments._ints(args.n), experiments._ints(args.D),
            experiments._strs(args.p or ""), experiments._strs(args.c or ""),
            experiments._strs(args.e or ""))
        meas = args.measurements
        cfg = experiments.ExperimentConfig(
            cells=cells, trials=args.trials, seed=args.seed,
            measurements=frozenset(experiments.MEASUREMENTS if meas == "all"
                                   else experiments._strs(meas)),
            field=_field(args), check=not args.no_check)
    overrides = {}
    if args.workers is not None:
        overrides["workers"] = args.workers
    if args.csv is not None:
        overrides["csv_path"] = args.csv
    if args.pgm is not None:
        overrides["pgm_path"] = args.pgm
    if args.event is not None:
        overrides["event"] = args.event
    if overrides:
        cfg = dataclasses.replace(cfg, **overrides)
    if args.config and args.seed is not None and args.seed != cfg.seed:
        raise UsageError("--seed conflicts with the seed in the config file")
    return cfg


def cmd_sweep(args, out):
    cfg = _config(args)
    if args.by_gens:
        text = experiments.betti_stats_csv(experiments.betti_stats(cfg))
        if cfg.csv_path:
            experiments._write(cfg.csv_path, text, "w")
        else:
            out.write(text)
        return
    records = experiments.run_sweep(cfg)
    if not cfg.csv_path:
        out.write(experiments.sweep_csv(records))


def cmd_phase(args, out):
    cfg = _config(args)
    if not cfg.pgm_path:
        raise UsageError("phase needs --pgm (or pgm = ... in the config)")
    experiments.run_sweep(cfg)
    out.write(f"wrote {cfg.pgm_path}\n")


def _add_sweep_flags(p):
    p.add_argument("--config", help="key = value config file")
    p.add_argument("--n", help="comma-separated variable counts")
    p.add_argument("--D", help="comma-separated degrees")
    p.add_argument("--p", help="comma-separated exact probabilities")
    p.add_argument("--c", help="comma-separated coefficients for p = c*D^e")
    p.add_argument("--e", help="comma-separated exponents for p = c*D^e, e.g. --e=-3/2")
    p.add_argument("--trials", type=int, help="trials per cell")
    p.add_argument("--seed", type=int, help="master seed (required)")
    p.add_argument("--measurements", default="all",
                   help="'all' or a comma list of: " + ", ".join(experiments.MEASUREMENTS))
    p.add_argument("--field", type=int, default=0, help="coefficient characteristic")
    p.add_argument("--workers", type=int, help="worker processes (default 1)")
    p.add_argument("--csv", help="CSV output path (default stdout)")
    p.add_argument("--pgm", help="PGM phase-diagram output path")
    p.add_argument("--event", choices=experiments.EVENTS, help="event for the phase diagram")
    p.add_argument("--no-check", action="store_true", help="skip per-trial invariant checks")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="monores", formatter_class=_fmt,
                     description="Random monomial ideals: sampling, resolutions, Scarf "
                                 "complexes, closed-form probabilities and sweeps.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("sample", formatter_class=_fmt, help="draw an ideal from M(n, D, p)")
    p.add_argument("--n", type=int, required=True, help="number of variables")
    p.add_argument("--D", type=int, required=True, help="generator degree")
    p.add_argument("--p", required=True, help="probability as an exact decimal or fraction")
    p.add_argument("--seed", type=int, help="64-bit seed (default: fresh entropy, echoed)")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("analyze", formatter_class=_fmt, help="one-line invariant record")
    _add_ideal_source(p)
    _add_field(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("betti", formatter_class=_fmt, help="Betti table as CSV")
    _add_ideal_source(p)
    _add_field(p)
    p.add_argument("--totals", action="store_true", help="print only the totals line")
    p.set_defaults(func=cmd_betti)

    p = sub.add_parser("scarf", formatter_class=_fmt, help="Scarf complex faces and f-vector")
    _add_ideal_source(p)
    p.add_argument("--method", choices=("levelwise", "closure"), default="levelwise",
                   help="face enumeration strategy (default levelwise)")
    p.set_defaults(func=cmd_scarf)

    p = sub.add_parser("witness", formatter_class=_fmt, help="witness sets as CSV")
    _add_ideal_source(p)
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("formulas", formatter_class=_fmt, help="closed-form values as CSV")
    p.add_argument("--n", type=int, required=True, help="number of variables (>= 2)")
    p.add_argument("--D", type=int, required=True, help="generator degree")
    p.add_argument("--p", required=True, help="probability as an exact decimal or fraction")
    p.add_argument("--a", help="comma-separated excess degrees (default 0..A)")
    p.set_defaults(func=cmd_formulas)

    p = sub.add_parser("sweep", formatter_class=_fmt, help="Monte Carlo sweep to CSV")
    _add_sweep_flags(p)
    p.add_argument("--by-gens", action="store_true",
                   help="report Betti and f-vector means bucketed by number of generators")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("phase", formatter_class=_fmt, help="sweep and write a PGM phase diagram")
    _add_sweep_flags(p)
    p.set_defaults(func=cmd_phase)
    return parser


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        args.func(args, out)
    except GuardError as exc:
        err.write(f"monores: {exc}\n")
        return 2
    except UsageError as exc:
        err.write(f"monores: {exc}\n")
        return 1
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    return 0


if __name__ == "__main__":
    sys.exit(main())

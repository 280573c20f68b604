"""Monte Carlo sweeps over (n, D, p) grids.

Seeding: cell k of a sweep uses ``derive_seed(master, k)`` and trial t of a
cell uses ``derive_seed(cell_seed, t)``. All aggregates are integer sums, so
the result does not depend on how trials are split across workers.

Config grammar (one ``key = value`` per line, ``#`` starts a comment)::

    n = 3                 # comma-separated integers
    D = 10, 20, 40        # comma-separated integers
    p = 0.01, 1/20        # exact decimals or fractions ...
    c = 0.1, 1, 10        # ... or p = c * D^e with these two keys
    e = -3/2
    trials = 1000
    seed = 12345
    measurements = all    # or a comma list of MEASUREMENTS
    field = 0             # 0 or a prime
    workers = 1
    csv = out/sweep.csv
    pgm = out/phase.pgm
    event = generic       # event plotted by ``phase``
    check = true          # assert per-trial invariants

The grid is the product n x D x (p or c x e), iterated in that order, with the
last axis fastest.
"""

from __future__ import annotations

import concurrent.futures as cf
import csv
import io
import os
import time
from dataclasses import dataclass, field
from decimal import Decimal, localcontext
from fractions import Fraction
from math import comb
from pathlib import Path

from . import analytic
from .errors import GuardError, UsageError
from .linalg import CoefficientField
from .monomial import MonomialIdeal, krull_dimension
from .resolution import betti_table
from .sampler import ModelParams, derive_seed, parse_probability, sample_ideal
from .scarf import (find_witness_sets, is_generic, is_scarf, is_strongly_generic,
                    restricted, scarf_complex, witness_lcm_map)

SCHEMA_VERSION = 1
MEASUREMENTS = ("pdim", "generic", "strongly_generic", "scarf", "cohen_macaulay",
                "betti_means", "witness_counts")
EVENTS = ("pdim_n", "pdim_0", "generic", "strongly_generic", "scarf", "cm")
_EVENT_NEEDS = {"pdim_n": "pdim", "pdim_0": "pdim", "generic": "generic",
                "strongly_generic": "strongly_generic", "scarf": "scarf",
                "cm": "cohen_macaulay"}
CHUNK = 100


class InvariantViolation(AssertionError):
    pass


@dataclass(frozen=True)
class Cell:
    n: int
    D: int
    p: Fraction
    label: str = ""  # how p was specified, e.g. "0.05" or "10*D^-4/3"
    column: int = 0  # position along the p axis, for phase diagrams

    def params(self, seed: int) -> ModelParams:
        return ModelParams(self.n, self.D, self.p, seed)


def p_from_curve(c, e, D: int, digits: int = 12) -> Fraction:
    """c * D^e rounded to ``digits`` significant decimal digits, clamped to [0, 1].

    Computed in decimal arithmetic so every platform lands on the same p.
    """
    try:
        c, e = Fraction(str(c)), Fraction(str(e))
    except ValueError as exc:
        raise UsageError(f"bad curve parameters c={c!r}, e={e!r}") from exc
    if c < 0:
        raise UsageError("curve coefficient c must be non-negative")
    with localcontext() as ctx:
        ctx.prec = 40
        ed = Decimal(e.numerator) / Decimal(e.denominator)
        val = Decimal(c.numerator) / Decimal(c.denominator) * Decimal(D) ** ed
        ctx.prec = digits
        val = +val
    p = Fraction(val)
    return min(max(p, Fraction(0)), Fraction(1))


@dataclass(frozen=True)
class ExperimentConfig:
    cells: tuple
    trials: int
    seed: int
    measurements: frozenset = frozenset(MEASUREMENTS)
    field: CoefficientField = CoefficientField(0)
    workers: int = 1
    csv_path: str | None = None
    pgm_path: str | None = None
    event: str = "generic"
    check: bool = True

    def __post_init__(self):
        if self.trials < 1:
            raise UsageError("trials must be >= 1")
        if not 0 <= self.seed < 1 << 64:
            raise UsageError("seed must be a 64-bit unsigned integer")
        if self.workers < 1:
            raise UsageError("workers must be >= 1")
        unknown = set(self.measurements) - set(MEASUREMENTS)
        if unknown:
            raise UsageError(f"unknown measurements: {sorted(unknown)}")
        if self.event not in EVENTS:
            raise UsageError(f"unknown event {self.event!r}; choose from {EVENTS}")
        if not self.cells:
            raise UsageError("empty grid")
        for cell in self.cells:
            ModelParams(cell.n, cell.D, cell.p, 0)


def _ints(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from exc


def _strs(text: str) -> list[str]:
    return [x.strip() for x in text.split(",") if x.strip()]


def build_grid(ns, Ds, ps=None, cs=None, es=None) -> tuple[Cell, ...]:
    if ps:
        if cs or es:
            raise UsageError("give either p or (c, e), not both")
        axis = [(parse_probability(p), str(p)) for p in ps]
        return tuple(Cell(n, D, p, label, j) for n in ns for D in Ds
                     for j, (p, label) in enumerate(axis))
    if not (cs and es):
        raise UsageError("grid needs p, or both c and e")
    cells = []
    for n in ns:
        for D in Ds:
            j = 0
            for c in cs:
                for e in es:
                    cells.append(Cell(n, D, p_from_curve(c, e, D), f"{c}*D^{e}", j))
                    j += 1
    return tuple(cells)


_BOOL = {"1": True, "true": True, "yes": True, "0": False, "false": False, "no": False}


def parse_config(text: str, base: Path | None = None) -> ExperimentConfig:
    kv = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"config line {lineno}: expected key = value")
        key, value = (s.strip() for s in line.split("=", 1))
        if key in kv:
            raise UsageError(f"config line {lineno}: duplicate key {key!r}")
        kv[key] = value
    known = {"n", "D", "p", "c", "e", "trials", "seed", "measurements", "field",
             "workers", "csv", "pgm", "event", "check"}
    unknown = set(kv) - known
    if unknown:
        raise UsageError(f"unknown config keys: {sorted(unknown)}")
    for required in ("n", "D", "trials", "seed"):
        if required not in kv:
            raise UsageError(f"config is missing {required!r}")
    cells = build_grid(_ints(kv["n"]), _ints(kv["D"]), _strs(kv.get("p", "")),
                       _strs(kv.get("c", "")), _strs(kv.get("e", "")))
    meas = kv.get("measurements", "all")
    measurements = frozenset(MEASUREMENTS if meas == "all" else _strs(meas))
    check = kv.get("check", "true").lower()
    if check not in _BOOL:
        raise UsageError(f"check must be a boolean, got {check!r}")

    def path(key):
        if key not in kv:
            return None
        p = Path(kv[key])
        return str(p if base is None or p.is_absolute() else base / p)

    return ExperimentConfig(
        cells=cells,
        trials=_ints(kv["trials"])[0],
        seed=_ints(kv["seed"])[0],
        measurements=measurements,
        field=CoefficientField(_ints(kv.get("field", "0"))[0]),
        workers=_ints(kv.get("workers", "1"))[0],
        csv_path=path("csv"),
        pgm_path=path("pgm"),
        event=kv.get("event", "generic"),
        check=_BOOL[check],
    )


def read_config(path) -> ExperimentConfig:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from exc
    return parse_config(text, base=path.parent)


# ---------------------------------------------------------------- single trial

@dataclass
class TrialOutcome:
    r: int
    pdim: int | None = None
    witness: bool | None = None
    generic: bool | None = None
    strongly_generic: bool | None = None
    scarf: bool | None = None
    cm: bool | None = None
    betti: tuple = ()
    f_vector: tuple = ()  # f_{-1}, f_0, ...
    witness_count: int = 0
    nonscarf_count: int = 0
    generic_mismatch: bool = False


def restricted_witness_counts(M: MonomialIdeal, p, report=None) -> tuple[int, int]:
    """(W, Y): witness and non-Scarf witness lcms inside the summation ranges of E[W], E[Y]."""
    n, D = M.n, M.generators[0].total_degree if M.r else 0
    if M.is_zero() or n < 2:
        return 0, 0
    if report is None:
        report = find_witness_sets(M)
    if not report:
        return 0, 0
    A = analytic.cutoff(n, p)
    lcms = report.witness_lcms
    bad = report.nonscarf_lcms(witness_lcm_map(M, report))
    W = sum(len(restricted(lcms, D, a)) for a in range(n - 1, A + 1))
    Y = sum(len(restricted(bad, D, a)) for a in range(2, A + 1))
    return W, Y


def _violation(msg, M):
    raise InvariantViolation(f"{msg}; ideal rows = {M.rows}")


def evaluate_trial(M: MonomialIdeal, p, measurements, field: CoefficientField,
                   check: bool = True) -> TrialOutcome:
    """Compute the requested invariants of one ideal; with ``check``, compute
    everything and assert the cross-module invariants."""
    need = set(MEASUREMENTS) if check else set(measurements)
    out = TrialOutcome(M.r)
    n = M.n
    table = None
    if need & {"pdim", "scarf", "cohen_macaulay", "betti_means"}:
        table = betti_table(M, field)
        out.pdim = table.pdim
        out.betti = table.totals
    report = None
    if need & {"pdim", "witness_counts"}:
        report = find_witness_sets(M)
        out.witness = bool(report)
    if need & {"generic", "strongly_generic"}:
        out.strongly_generic = is_strongly_generic(M)
        out.generic = is_generic(M)
        out.generic_mismatch = out.generic != out.strongly_generic
    sc = None
    if need & {"scarf", "betti_means"}:
        sc = scarf_complex(M)
        out.f_vector = sc.f_vector
        out.scarf = is_scarf(M, field, table=table, complex_=sc)
    if "cohen_macaulay" in need:
        out.cm = krull_dimension(M) == n - out.pdim
    if "witness_counts" in need:
        out.witness_count, out.nonscarf_count = restricted_witness_counts(M, p, report)

    if check:
        if out.pdim > n:
            _violation(f"pdim {out.pdim} > n", M)
        if out.witness != (out.pdim == n):
            _violation(f"witness oracle {out.witness} disagrees with pdim {out.pdim}", M)
        for L_lcm in report.witness_lcms:
            if table.beta(n, L_lcm) == 0:
                _violation(f"no Betti entry at ({n}, {L_lcm})", M)
        for i in range(1, len(sc.f_vector)):
            if sc.f(i - 1) > table.beta(i):
                _violation(f"f_{i - 1} > beta_{i}", M)
        if out.strongly_generic and not out.generic:
            _violation("strongly generic but not generic", M)
        if out.generic and not out.scarf:
            _violation("generic but not Scarf", M)
        if report.nonscarf_pairs and out.scarf:
            _violation("non-Scarf witness on a Scarf ideal", M)
        if out.pdim == n and any(table.beta(i) < comb(n, i) for i in range(1, n + 1)):
            _violation("pdim = n but some beta_i < binomial(n, i)", M)
    return out


# ------------------------------------------------------------------ aggregation

@dataclass
class SweepRecord:
    cell: Cell
    trials: int
    seed: int
    skipped: int = 0
    skip_reasons: dict = field(default_factory=dict)
    valid: int = 0
    nonzero: int = 0  # valid trials with G nonempty
    gens_total: int = 0
    counts: dict = field(default_factory=dict)  # event -> count over valid trials
    counts_nonzero: dict = field(default_factory=dict)  # event -> count over nonzero trials
    measured: frozenset = frozenset()
    beta_sums: list = field(default_factory=list)  # index i -> sum of beta_i
    max_beta_2: int = 0
    f_sums: list = field(default_factory=list)  # index i -> sum of f_i
    witness_total: int = 0
    nonscarf_total: int = 0
    generic_mismatches: int = 0
    wall_time: float = 0.0

    def __post_init__(self):
        n = self.cell.n
        if not self.beta_sums:
            self.beta_sums = [0] * (n + 1)
        if not self.f_sums:
            self.f_sums = [0] * n
        for ev in EVENTS:
            self.counts.setdefault(ev, 0)
            self.counts_nonzero.setdefault(ev, 0)

    def add(self, o: TrialOutcome):
        self.valid += 1
        self.gens_total += o.r
        if o.r:
            self.nonzero += 1
        flags = {"pdim_n": o.pdim == self.cell.n if o.pdim is not None else None,
                 "pdim_0": o.pdim == 0 if o.pdim is not None else None,
                 "generic": o.generic, "strongly_generic": o.strongly_generic,
                 "scarf": o.scarf, "cm": o.cm}
        for ev, v in flags.items():
            if v:
                self.counts[ev] += 1
                if o.r:
                    self.counts_nonzero[ev] += 1
        for i, b in enumerate(o.betti[1:], 1):
            if i < len(self.beta_sums):
                self.beta_sums[i] += b
        if len(o.betti) > 2:
            self.max_beta_2 = max(self.max_beta_2, o.betti[2])
        for i, f in enumerate(o.f_vector[1:]):
            if i < len(self.f_sums):
                self.f_sums[i] += f
        self.witness_total += o.witness_count
        self.nonscarf_total += o.nonscarf_count
        self.generic_mismatches += o.generic_mismatch

    def merge(self, other: "SweepRecord"):
        self.skipped += other.skipped
        for k, v in other.skip_reasons.items():
            self.skip_reasons[k] = self.skip_reasons.get(k, 0) + v
        self.valid += other.valid
        self.nonzero += other.nonzero
        self.gens_total += other.gens_total
        for ev in EVENTS:
            self.counts[ev] += other.counts[ev]
            self.counts_nonzero[ev] += other.counts_nonzero[ev]
        self.beta_sums = [a + b for a, b in zip(self.beta_sums, other.beta_sums)]
        self.f_sums = [a + b for a, b in zip(self.f_sums, other.f_sums)]
        self.max_beta_2 = max(self.max_beta_2, other.max_beta_2)
        self.witness_total += other.witness_total
        self.nonscarf_total += other.nonscarf_total
        self.generic_mismatches += other.generic_mismatches
        self.wall_time += other.wall_time

    def freq(self, event: str) -> Fraction | None:
        if _EVENT_NEEDS[event] not in self.measured or self.valid == 0:
            return None
        return Fraction(self.counts[event], self.valid)

    def freq_given_nonzero(self, event: str) -> Fraction | None:
        if _EVENT_NEEDS[event] not in self.measured or self.nonzero == 0:
            return None
        return Fraction(self.counts_nonzero[event], self.nonzero)

    def mean(self, total) -> Fraction | None:
        return None if self.valid == 0 else Fraction(total, self.valid)

    @property
    def mean_num_gens(self):
        return self.mean(self.gens_total)

    def mean_beta(self, i: int):
        return self.mean(self.beta_sums[i])

    def mean_f(self, i: int):
        return self.mean(self.f_sums[i])


def _run_chunk(cell: Cell, seed: int, start: int, stop: int, measurements, field, check):
    rec = SweepRecord(cell, stop - start, seed, measured=frozenset(measurements))
    t0 = time.perf_counter()
    for t in range(start, stop):
        try:
            M = sample_ideal(cell.params(derive_seed(seed, t)))
            o = evaluate_trial(M, cell.p, measurements, field, check)
        except GuardError as exc:
            rec.skipped += 1
            key = f"guard:{exc.guard}"
            rec.skip_reasons[key] = rec.skip_reasons.get(key, 0) + 1
            continue
        rec.add(o)
    rec.wall_time = time.perf_counter() - t0
    return rec


def _chunks(trials: int):
    return [(s, min(s + CHUNK, trials)) for s in range(0, trials, CHUNK)]


def run_cell(cell: Cell, trials: int, seed: int, measurements=MEASUREMENTS,
             field: CoefficientField = CoefficientField(0), check: bool = True) -> SweepRecord:
    """Run ``trials`` samples of one cell; trial t uses ``derive_seed(seed, t)``."""
    if trials < 1:
        raise UsageError("trials must be >= 1")
    rec = SweepRecord(cell, trials, seed, measured=frozenset(measurements))
    for s, e in _chunks(trials):
        rec.merge(_run_chunk(cell, seed, s, e, measurements, field, check))
    return rec


def _executor(workers: int):
    if workers == 1:
        return None
    return cf.ProcessPoolExecutor(max_workers=workers)


def run_sweep(config: ExperimentConfig, write: bool = True) -> list[SweepRecord]:
    """Every cell in grid order; cell k uses seed ``derive_seed(config.seed, k)``."""
    seeds = [derive_seed(config.seed, k) for k in range(len(config.cells))]
    records = [SweepRecord(c, config.trials, s, measured=config.measurements)
               for c, s in zip(config.cells, seeds)]
    jobs = [(k, s, e) for k in range(len(config.cells)) for s, e in _chunks(config.trials)]
    calls = [(config.cells[k], seeds[k], s, e, config.measurements, config.field, config.check)
             for k, s, e in jobs]
    pool = _executor(config.workers)
    if pool is None:
        parts = [_run_chunk(*call) for call in calls]
    else:
        with pool:
            parts = list(pool.map(_run_chunk, *zip(*calls)))
    for (k, _, _), part in zip(jobs, parts):
        records[k].merge(part)
    if write:
        if config.csv_path:
            _write(config.csv_path, sweep_csv(records), "w")
        if config.pgm_path:
            emit_phase_diagram(records, config.event, config.pgm_path)
    return records


# -------------------------------------------------------------------- output

def fixed6(x: Fraction | None) -> str:
    """Round half up to 6 decimals; empty for undefined."""
    if x is None:
        return ""
    scaled = (x * 10**6 * 2 + 1) // 2
    sign = "-" if scaled < 0 else ""
    scaled = abs(scaled)
    return f"{sign}{scaled // 10**6}.{scaled % 10**6:06d}"


def _exact(x: Fraction | None) -> str:
    return "" if x is None else str(x)


def csv_columns(n: int) -> list[str]:
    cols = ["schema_version", "n", "D", "p_num", "p_den", "trials", "skipped", "seed",
            "mean_num_gens", "freq_pdim_n", "freq_pdim_0", "freq_generic",
            "freq_strongly_generic", "freq_scarf", "freq_cm"]
    cols += [f"mean_beta_{i}" for i in range(1, n + 1)]
    cols += ["max_beta_2"]
    cols += [f"mean_f_{i}" for i in range(n)]
    cols += ["mean_witness_count", "mean_nonscarf_count"]
    cols += [f"freq_{ev}_exact" for ev in EVENTS]
    return cols


def _record_row(rec: SweepRecord, n: int) -> list[str]:
    c = rec.cell
    betti = "betti_means" in rec.measured
    wit = "witness_counts" in rec.measured
    row = [str(SCHEMA_VERSION), str(c.n), str(c.D), str(c.p.numerator), str(c.p.denominator),
           str(rec.trials), str(rec.skipped), str(rec.seed), fixed6(rec.mean_num_gens)]
    row += [fixed6(rec.freq(ev)) for ev in EVENTS]
    row += [fixed6(rec.mean_beta(i)) if betti and i <= c.n else "" for i in range(1, n + 1)]
    row += [str(rec.max_beta_2) if betti else ""]
    row += [fixed6(rec.mean_f(i)) if betti and i < c.n else "" for i in range(n)]
    row += [fixed6(rec.mean(rec.witness_total)) if wit else "",
            fixed6(rec.mean(rec.nonscarf_total)) if wit else ""]
    row += [_exact(rec.freq(ev)) for ev in EVENTS]
    return row


def sweep_csv(records: list[SweepRecord]) -> str:
    """CSV text: a ``# monores-sweep schema_version=...`` comment line, header, rows."""
    n = max(r.cell.n for r in records)
    buf = io.StringIO()
    buf.write(f"# monores-sweep schema_version={SCHEMA_VERSION}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(csv_columns(n))
    for rec in records:
        w.writerow(_record_row(rec, n))
    return buf.getvalue()


def _write(path, data, mode):
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, mode) as fh:
            fh.write(data)
    except OSError as exc:
        raise UsageError(f"cannot write {path}: {exc}") from exc


def pixel(freq: Fraction | None) -> int:
    """round(255 * freq), halves rounded up; undefined cells are black."""
    if freq is None:
        return 0
    return int((255 * freq * 2 + 1) // 2)


def phase_grid(records: list[SweepRecord], event: str):
    """(D values top to bottom, column labels left to right, pixel rows)."""
    if event not in EVENTS:
        raise UsageError(f"unknown event {event!r}")
    if not records:
        raise UsageError("no records")
    if len({r.cell.n for r in records}) != 1:
        raise UsageError("phase diagram needs a single n")
    rows: dict[int, dict[int, SweepRecord]] = {}
    for rec in records:
        row = rows.setdefault(rec.cell.D, {})
        if rec.cell.column in row:
            raise UsageError(f"duplicate cell at D={rec.cell.D}, column {rec.cell.column}")
        row[rec.cell.column] = rec
    widths = {len(r) for r in rows.values()}
    cols = sorted(next(iter(rows.values())))
    if len(widths) != 1 or any(sorted(r) != cols for r in rows.values()):
        raise UsageError("ragged grid: every D row needs the same p columns")
    Ds = list(rows)
    labels = [rows[Ds[0]][j].cell.label for j in cols]
    pixels = [[pixel(rows[D][j].freq(event)) for j in cols] for D in Ds]
    return Ds, labels, pixels


def emit_phase_diagram(records: list[SweepRecord], event: str, path) -> Path:
    """Binary PGM (P5), one pixel per cell; ``<path>.txt`` describes the axes."""
    Ds, labels, pixels = phase_grid(records, event)
    h, w = len(Ds), len(labels)
    data = f"P5\n{w} {h}\n255\n".encode() + bytes(v for row in pixels for v in row)
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_bytes(data)
    except OSError as exc:
        raise UsageError(f"cannot write {path}: {exc}") from exc
    side = [f"event: {event}",
            f"n: {records[0].cell.n}",
            f"size: {w} x {h} (width x height)",
            "rows (top to bottom): D = " + ", ".join(map(str, Ds)),
            "columns (left to right): p = " + ", ".join(labels),
            "pixel: round(255 * frequency), half up; undefined cells are 0"]
    _write(str(path) + ".txt", "\n".join(side) + "\n", "w")
    return path


# ----------------------------------------------------------------- Betti stats

@dataclass
class BettiBucket:
    n: int
    D: int
    r: int
    count: int = 0
    beta_sums: list = field(default_factory=list)
    f_sums: list = field(default_factory=list)
    max_beta_2: int = 0

    def mean_beta(self, i: int) -> Fraction:
        return Fraction(self.beta_sums[i], self.count)

    def mean_f(self, i: int) -> Fraction:
        return Fraction(self.f_sums[i], self.count)


def betti_stats(config: ExperimentConfig) -> list[BettiBucket]:
    """Mean beta_i, mean f_{i-1} and max beta_2, bucketed by (n, D, number of generators)."""
    buckets: dict[tuple, BettiBucket] = {}
    for k, cell in enumerate(config.cells):
        seed = derive_seed(config.seed, k)
        for t in range(config.trials):
            try:
                M = sample_ideal(cell.params(derive_seed(seed, t)))
                table = betti_table(M, config.field)
                sc = scarf_complex(M)
            except GuardError:
                continue
            n = cell.n
            b = buckets.setdefault((n, cell.D, M.r), BettiBucket(
                n, cell.D, M.r, 0, [0] * (n + 1), [0] * n))
            b.count += 1
            for i in range(1, n + 1):
                b.beta_sums[i] += table.beta(i)
            for i in range(n):
                b.f_sums[i] += sc.f(i)
            b.max_beta_2 = max(b.max_beta_2, table.beta(2))
    return [buckets[key] for key in sorted(buckets)]


def betti_stats_csv(buckets: list[BettiBucket]) -> str:
    n = max((b.n for b in buckets), default=1)
    buf = io.StringIO()
    buf.write(f"# monores-betti-stats schema_version={SCHEMA_VERSION}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n", "D", "num_gens", "count"] + [f"mean_beta_{i}" for i in range(1, n + 1)]
               + ["max_beta_2"] + [f"mean_f_{i}" for i in range(n)])
    for b in buckets:
        w.writerow([b.n, b.D, b.r, b.count]
                   + [fixed6(b.mean_beta(i)) if i <= b.n else "" for i in range(1, n + 1)]
                   + [b.max_beta_2]
                   + [fixed6(b.mean_f(i)) if i < b.n else "" for i in range(n)])
    return buf.getvalue()


def default_workers() -> int:
    return max(1, len(os.sched_getaffinity(0)) if hasattr(os, "sched_getaffinity")
               else (os.cpu_count() or 1))

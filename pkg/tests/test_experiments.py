from fractions import Fraction

import pytest

from conftest import ideal
from monores import UsageError, betti_table, find_witness_sets, sample_ideal
from monores.experiments import (CHUNK, EVENTS, Cell, ExperimentConfig, InvariantViolation,
                                 betti_stats, build_grid, csv_columns, emit_phase_diagram,
                                 evaluate_trial, fixed6, p_from_curve, parse_config, phase_grid,
                                 pixel, read_config, run_cell, run_sweep, sweep_csv)
from monores.linalg import CoefficientField
from monores.sampler import derive_seed

F = Fraction
QQ = CoefficientField(0)


class TestConfig:
    def test_parse(self, tmp_path):
        cfg = parse_config("""
            # a small grid
            n = 3
            D = 4, 6
            p = 0.1, 1/5
            trials = 20
            seed = 7
            measurements = pdim, scarf
            csv = out/s.csv
        """, base=tmp_path)
        assert [(c.D, c.p, c.column) for c in cfg.cells] == [
            (4, F(1, 10), 0), (4, F(1, 5), 1), (6, F(1, 10), 0), (6, F(1, 5), 1)]
        assert cfg.measurements == {"pdim", "scarf"}
        assert cfg.csv_path == str(tmp_path / "out/s.csv")
        assert cfg.check and cfg.workers == 1

    def test_curve_axis(self):
        cells = build_grid([3], [10], cs=["1", "10"], es=["-2"])
        assert [c.p for c in cells] == [F(1, 100), F(1, 10)]
        assert cells[1].label == "10*D^-2"

    def test_curve_rounding(self):
        p = p_from_curve("10", "-4/3", 20)
        assert len(str(p.limit_denominator(10**20).numerator)) <= 12
        assert abs(float(p) - 10 * 20 ** (-4 / 3)) < 1e-12
        assert p_from_curve(1000, -1, 2) == 1

    @pytest.mark.parametrize("text", [
        "n = 3\nD = 4\np = 0.1\ntrials = 5",             # no seed
        "n = 3\nD = 4\ntrials = 5\nseed = 1",            # no p
        "n = 3\nD = 4\np = 0.1\nc = 1\ne = -2\ntrials = 5\nseed = 1",
        "n = 3\nD = 4\np = 0.1\ntrials = 5\nseed = 1\nbogus = 2",
        "n = 3\nn = 4\nD = 4\np = 0.1\ntrials = 5\nseed = 1",
        "n = 3\nD = 4\np = 0.1\ntrials = 0\nseed = 1",
        "n = 3\nD = 4\np = 1.5\ntrials = 5\nseed = 1",
        "n = 3\nD = 4\np = 0.1\ntrials = 5\nseed = 1\nevent = nope",
        "n = 3\nD = 4\np = 0.1\ntrials = 5\nseed = 1\nmeasurements = magic",
        "n = 3\nD = 4\np = 0.1\ntrials = 5\nseed = 1\ncheck = maybe",
        "n = 3\nD = four\np = 0.1\ntrials = 5\nseed = 1",
        "just some words",
    ])
    def test_errors(self, text):
        with pytest.raises(UsageError):
            parse_config(text)

    def test_missing_file(self, tmp_path):
        with pytest.raises(UsageError):
            read_config(tmp_path / "nope.cfg")


class TestTrial:
    def test_extremes(self):
        rec = run_cell(Cell(3, 5, F(0)), 50, 1)
        assert rec.freq("pdim_0") == 1 and rec.freq("pdim_n") == 0
        assert rec.freq_given_nonzero("generic") is None
        rec = run_cell(Cell(2, 2, F(1)), 10, 1)
        assert all(rec.freq(ev) == (0 if ev == "pdim_0" else 1) for ev in EVENTS)

    def test_outcome_fields(self):
        M = ideal(3, (2, 0, 0), (0, 2, 0), (0, 0, 2))
        o = evaluate_trial(M, F(1, 10), {"pdim", "betti_means", "witness_counts"}, QQ)
        assert o.pdim == 3 and o.witness
        assert o.betti == (1, 3, 3, 1)
        assert o.f_vector == (1, 3, 3, 1)

    def test_invariant_violation_is_assertion(self):
        assert issubclass(InvariantViolation, AssertionError)

    def test_partial_measurements(self):
        rec = run_cell(Cell(3, 4, F(1, 5)), 20, 3, measurements=("pdim",))
        assert rec.freq("scarf") is None
        assert rec.freq("pdim_n") is not None

    def test_guard_skips_are_counted(self):
        rec = run_cell(Cell(3, 3000, F(1, 10)), 3, 1, check=False)
        assert rec.skipped == 3 and rec.valid == 0
        assert rec.skip_reasons == {"guard:enumeration": 3}
        assert rec.freq("pdim_n") is None


class TestSweep:
    def config(self, **kw):
        base = dict(cells=build_grid([3], [4, 6], ps=["0.05", "0.2"]), trials=CHUNK + 30,
                    seed=2024)
        base.update(kw)
        return ExperimentConfig(**base)

    def test_cell_seeding(self):
        cfg = self.config(cells=build_grid([3], [5], ps=["0.1"]), trials=40)
        [rec] = run_sweep(cfg, write=False)
        want = run_cell(cfg.cells[0], 40, derive_seed(2024, 0))
        assert sweep_csv([rec]) == sweep_csv([want])

    def test_rerun_is_bit_identical(self):
        a = sweep_csv(run_sweep(self.config(), write=False))
        b = sweep_csv(run_sweep(self.config(), write=False))
        assert a == b

    def test_workers_do_not_change_results(self, tmp_path):
        outs = []
        for w in (1, 3):
            csv_path, pgm_path = tmp_path / f"{w}.csv", tmp_path / f"{w}.pgm"
            run_sweep(self.config(workers=w, csv_path=str(csv_path), pgm_path=str(pgm_path)))
            outs.append((csv_path.read_bytes(), pgm_path.read_bytes()))
        assert outs[0] == outs[1]

    def test_csv_schema(self):
        text = sweep_csv(run_sweep(self.config(trials=10), write=False))
        lines = text.splitlines()
        assert lines[0] == "# monores-sweep schema_version=1"
        assert lines[1].split(",") == csv_columns(3)
        assert len(lines) == 2 + 4
        row = dict(zip(csv_columns(3), lines[2].split(",")))
        assert (row["p_num"], row["p_den"], row["trials"]) == ("1", "20", "10")

    def test_beta_one_is_generator_count(self):
        [rec] = run_sweep(self.config(cells=build_grid([3], [6], ps=["0.2"]), trials=60),
                          write=False)
        assert rec.mean_beta(1) == rec.mean_num_gens
        for i in range(1, 3):
            assert rec.mean_beta(i + 1) >= rec.mean_f(i)


class TestOutput:
    def test_fixed6(self):
        assert fixed6(F(1, 3)) == "0.333333"
        assert fixed6(F(1, 2 * 10**6)) == "0.000001"
        assert fixed6(F(1)) == "1.000000"
        assert fixed6(None) == ""

    def test_pixel(self):
        assert pixel(F(0)) == 0 and pixel(F(1)) == 255
        assert pixel(F(1, 2)) == 128  # 127.5 rounds up
        assert pixel(None) == 0

    def test_pgm_black_and_white(self, tmp_path):
        cells = build_grid([2], [2, 3], ps=["0", "1"])
        recs = [run_cell(c, 5, 0) for c in cells]
        path = emit_phase_diagram(recs, "pdim_n", tmp_path / "x.pgm")
        assert path.read_bytes() == b"P5\n2 2\n255\n" + bytes([0, 255, 0, 255])
        side = (tmp_path / "x.pgm.txt").read_text()
        assert "rows (top to bottom): D = 2, 3" in side

    def test_pgm_pixels_match_frequencies(self, tmp_path):
        cells = build_grid([3], [4, 5], ps=["0.1", "0.3"])
        recs = [run_cell(c, 30, 5) for c in cells]
        data = emit_phase_diagram(recs, "scarf", tmp_path / "y.pgm").read_bytes()
        body = data[len(b"P5\n2 2\n255\n"):]
        assert list(body) == [pixel(r.freq("scarf")) for r in recs]
        assert all(b == round(255 * float(r.freq("scarf")) + 1e-9) for b, r in zip(body, recs))

    def test_ragged_grid(self):
        recs = [run_cell(c, 2, 0) for c in build_grid([2], [2], ps=["0.1", "0.2"])]
        recs += [run_cell(c, 2, 0) for c in build_grid([2], [3], ps=["0.1"])]
        with pytest.raises(UsageError):
            phase_grid(recs, "generic")

    def test_mixed_n(self):
        recs = [run_cell(c, 2, 0) for c in build_grid([2, 3], [3], ps=["0.1"])]
        with pytest.raises(UsageError):
            phase_grid(recs, "generic")


def test_betti_stats_buckets():
    cfg = ExperimentConfig(cells=build_grid([3], [5], ps=["0.15"]), trials=80, seed=4)
    buckets = betti_stats(cfg)
    assert sum(b.count for b in buckets) == 80
    for b in buckets:
        assert b.mean_beta(1) == b.r
        if b.r < b.n:
            assert b.beta_sums[b.n] == 0
        for i in range(1, b.n + 1):
            assert b.mean_beta(i) >= b.mean_f(i - 1)


@pytest.mark.slow
def test_dual_oracle_cell():
    # both Betti routes and the witness test must agree on every sampled ideal
    cell = Cell(3, 10, F(1, 20))
    seed = derive_seed(77, 0)
    pdim_n = 0
    for t in range(1000):
        M = sample_ideal(cell.params(derive_seed(seed, t)))
        taylor = betti_table(M, method="taylor") if M.r <= 14 else None
        koszul = betti_table(M, method="koszul")
        if taylor is not None:
            assert taylor == koszul
        full = koszul.pdim == 3
        assert bool(find_witness_sets(M)) == full
        pdim_n += full
    rec = run_cell(cell, 1000, seed)
    assert rec.counts["pdim_n"] == pdim_n


@pytest.mark.slow
def test_generic_frequency_decreases_along_p():
    cells = build_grid([3], [10], ps=["0.005", "0.05", "0.3"])
    freqs = [run_cell(c, 300, 9, measurements=("generic",)).freq("generic") for c in cells]
    assert freqs[0] > freqs[1] > freqs[2]

import csv
import json
import math
import os

import numpy as np
import pytest

from ollga.bench import (
    SUMMARY_COLUMNS,
    ExperimentConfig,
    SummaryRow,
    derive_seed,
    f_sweep,
    fit_loglog_slope,
    read_summary_csv,
    run_experiment,
    static_lambda_grid,
    summarize,
)
from ollga.cli import main
from ollga.engine import TRACE_COLUMNS, RunResult


def _rows(ns, means):
    return [SummaryRow("a", n, 1, m, m, 0.0, m, m, 1.0, m / n) for n, m in zip(ns, means)]


class TestConfig:
    @pytest.mark.parametrize("kwargs", [
        dict(algorithm="nope", n_values=[10]),
        dict(algorithm="ga-static", n_values=[10]),
        dict(algorithm="ga-static", n_values=[10], lam=11),
        dict(algorithm="ga-fitness-dependent", n_values=[10], lam=2),
        dict(algorithm="ga-fitness-dependent", n_values=[10], F=2.0),
        dict(algorithm="rls", n_values=[10], r=4.0),
        dict(algorithm="ga-self-adjusting", n_values=[10], F=1.0),
        dict(algorithm="ga-self-adjusting", n_values=[10], r=1.5),
        dict(algorithm="ga-self-adjusting", n_values=[20, 10]),
        dict(algorithm="ga-self-adjusting", n_values=[]),
        dict(algorithm="ga-self-adjusting", n_values=[10], replicates=0),
        dict(algorithm="ga-self-adjusting", n_values=[10], budget_factor=0),
    ])
    def test_rejects(self, kwargs):
        with pytest.raises(ValueError):
            ExperimentConfig(**kwargs)

    def test_labels(self):
        assert ExperimentConfig("ga-static", [10], lam=4).label == "ga-static(lambda=4)"
        assert ExperimentConfig("ga-static", [10], lam=2.5).label == "ga-static(lambda=2.5)"
        assert ExperimentConfig("ga-self-adjusting", [10]).label == "ga-self-adjusting(F=1.5,r=5)"
        assert ExperimentConfig("rls", [10]).label == "rls"

    def test_round_trip(self):
        cfg = ExperimentConfig("ga-self-adjusting", [16, 32], 3, F=2.0, base_seed=5)
        assert ExperimentConfig.from_dict(json.loads(json.dumps(cfg.to_dict()))) == cfg
        with pytest.raises(ValueError):
            ExperimentConfig.from_dict({"algorithm": "rls", "n_values": [4], "colour": 1})


def test_seed_derivation_is_stable_and_distinct():
    a = derive_seed(0, "rls", 16, 0)
    assert a == derive_seed(0, "rls", 16, 0)
    assert len({a, derive_seed(1, "rls", 16, 0), derive_seed(0, "rls", 32, 0),
                derive_seed(0, "rls", 16, 1), derive_seed(0, "ea", 16, 0)}) == 5
    assert 0 <= a < 2**64


def test_summary_statistics():
    results = [RunResult(v, 1, ok) for v, ok in [(10, True), (20, True), (30, False), (40, True)]]
    row = summarize("x", 10, results)
    assert row.mean_evals == 25 and row.median_evals == 25
    half = 1.959963984540054 * np.std([10, 20, 30, 40], ddof=1) / 2
    assert row.ci95_low == pytest.approx(25 - half)
    assert row.ci95_high == pytest.approx(25 + half)
    assert row.success_rate == 0.75 and row.mean_evals_over_n == 2.5


def test_rls_small_always_succeeds():
    (row,) = run_experiment(ExperimentConfig("rls", [16], replicates=20))
    assert row.success_rate == 1.0


def test_outputs_are_reproducible(tmp_path):
    cfg = dict(algorithm="ga-self-adjusting", n_values=[32, 64], replicates=5, base_seed=9,
               trace=True)
    run_experiment(ExperimentConfig(**cfg, out=str(tmp_path / "a")))
    run_experiment(ExperimentConfig(**cfg, out=str(tmp_path / "b")))
    assert (tmp_path / "a" / "summary.csv").read_bytes() == \
        (tmp_path / "b" / "summary.csv").read_bytes()
    ma, mb = (json.loads((tmp_path / d / "manifest.json").read_text()) for d in "ab")
    for m in (ma, mb):
        m["configs"][0].pop("out")
    assert ma == mb
    traces = sorted(os.listdir(tmp_path / "a" / "traces"))
    assert len(traces) == 10
    for name in traces:
        assert (tmp_path / "a" / "traces" / name).read_bytes() == \
            (tmp_path / "b" / "traces" / name).read_bytes()


def test_summary_csv_layout_and_round_trip(tmp_path):
    rows = run_experiment(ExperimentConfig("one-plus-one-ea", [16, 32], 4, out=str(tmp_path)))
    with open(tmp_path / "summary.csv") as fh:
        header = next(csv.reader(fh))
    assert header == SUMMARY_COLUMNS
    back = read_summary_csv(tmp_path / "summary.csv")
    assert [r.mean_evals for r in back] == [r.mean_evals for r in rows]
    manifest = json.loads((tmp_path / "manifest.json").read_text())
    assert manifest["configs"][0]["algorithm"] == "one-plus-one-ea"
    assert manifest["censored"] == []


def test_censored_runs_are_reported(tmp_path):
    rows = run_experiment(ExperimentConfig("ga-static", [200], 3, lam=1, budget_factor=0.5,
                                           out=str(tmp_path)))
    assert rows[0].success_rate == 0.0
    assert rows[0].mean_evals == 100
    manifest = json.loads((tmp_path / "manifest.json").read_text())
    assert manifest["censored"][0]["n"] == 200


def test_trace_files_follow_the_rules(tmp_path):
    n, F = 128, 1.5
    run_experiment(ExperimentConfig("ga-self-adjusting", [n], 2, out=str(tmp_path), trace=True))
    for path in (tmp_path / "traces").iterdir():
        with open(path) as fh:
            recs = list(csv.DictReader(fh))
        assert tuple(recs[0]) == TRACE_COLUMNS
        for a, b in zip(recs, recs[1:]):
            lam = float(a["lambda_real"])
            expected = max(lam / F, 1) if a["success"] == "1" else min(lam * F**0.25, n)
            assert float(b["lambda_real"]) == pytest.approx(expected)
            assert float(a["fitness_after"]) >= float(a["fitness_before"])
        assert float(recs[-1]["fitness_after"]) == n


def test_unwritable_output_is_an_error(tmp_path):
    blocker = tmp_path / "file"
    blocker.write_text("")
    with pytest.raises(OSError):
        run_experiment(ExperimentConfig("rls", [8], out=str(blocker / "sub")))


class TestSlopeFit:
    def test_linear(self):
        ns = [2**k for k in range(7, 14)]
        slope, intercept, r2 = fit_loglog_slope(_rows(ns, [7 * n for n in ns]))
        assert slope == pytest.approx(1.0)
        assert intercept == pytest.approx(math.log(7))
        assert r2 == pytest.approx(1.0)

    def test_n_log_n_is_superlinear(self):
        ns = [2**k for k in range(7, 14)]
        slope, _, _ = fit_loglog_slope(_rows(ns, [n * math.log(n) for n in ns]))
        assert slope > 1.05

    def test_constant(self):
        slope, _, r2 = fit_loglog_slope(_rows([10, 20, 40], [5.0, 5.0, 5.0]))
        assert slope == pytest.approx(0.0, abs=1e-12) and r2 == 1.0

    def test_needs_three_sizes(self):
        with pytest.raises(ValueError):
            fit_loglog_slope(_rows([10, 20], [1.0, 2.0]))


def test_grid_and_sweep(tmp_path):
    rows = static_lambda_grid(64, [1, 2, 4], replicates=3, out=str(tmp_path / "g"))
    assert [r.algorithm for r in rows] == [f"ga-static(lambda={v})" for v in (1, 2, 4)]
    rows = f_sweep(64, [1.5, 2.0], replicates=3, out=str(tmp_path / "s"))
    assert all(0 <= r.cap_occupancy <= 1 for r in rows)
    header = (tmp_path / "s" / "summary.csv").read_text().splitlines()[0]
    assert header.endswith(",cap_occupancy")


class TestCli:
    def test_run_and_fit(self, tmp_path, capsys):
        out = tmp_path / "run"
        assert main(["run", "--algo", "ga-self-adjusting", "--n", "64,128,256", "--reps", "3",
                     "--seed", "1", "--out", str(out)]) == 0
        assert len(read_summary_csv(out / "summary.csv")) == 3
        capsys.readouterr()
        assert main(["fit", str(out / "summary.csv")]) == 0
        assert "slope=" in capsys.readouterr().out

    def test_run_from_config(self, tmp_path, capsys):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"algorithm": "ga-static", "n_values": [32], "lam": 2,
                                   "replicates": 2}))
        assert main(["run", "--config", str(cfg)]) == 0
        assert "ga-static(lambda=2)" in capsys.readouterr().out

    def test_invalid_combination_is_rejected(self):
        with pytest.raises(ValueError):
            main(["run", "--algo", "rls", "--n", "8", "--F", "2"])

    def test_oracle(self, tmp_path):
        out = tmp_path / "oracle.csv"
        assert main(["oracle", "drift", "--samples", "1000", "--out", str(out)]) == 0
        with open(out) as fh:
            recs = list(csv.DictReader(fh))
        assert len(recs) == 6 and all(r["passed"] == "1" for r in recs)

    def test_grid(self, capsys):
        assert main(["grid", "--n", "32", "--lambda", "1,2", "--reps", "2"]) == 0
        assert capsys.readouterr().out.count("ga-static") == 2


class TestStaticShape:
    def test_lambda_one_is_n_log_n(self):
        ns = [2**k for k in range(7, 12)]
        rows = run_experiment(ExperimentConfig("ga-static", ns, 60, lam=1, base_seed=3))
        band = [r.mean_evals / (r.n * math.log(r.n)) for r in rows]
        assert max(band) / min(band) < 1.3

    def test_minimizer_is_small(self):
        grid = [1, 2, 4, 8, 16, 32]
        rows = static_lambda_grid(1000, grid, replicates=60, seed=8)
        assert grid[int(np.argmin([r.mean_evals for r in rows]))] <= 8

    def test_update_strength_near_one_approaches_static(self):
        (near,) = f_sweep(256, [1 + 1e-9], replicates=60, seed=1)
        (static,) = static_lambda_grid(256, [1], replicates=60, seed=1)
        assert abs(near.mean_evals - static.mean_evals) < 4 * math.hypot(
            near.std_evals, static.std_evals) / math.sqrt(60)


def test_cli_table_has_summary_columns(capsys):
    assert main(["run", "--algo", "rls", "--n", "8", "--reps", "2"]) == 0
    header = capsys.readouterr().out.splitlines()[0]
    assert header.split(",") == SUMMARY_COLUMNS

"""Command-line entry point: ``ollga {run,grid,sweep-f,oracle,fit}``."""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

import numpy as np

from . import oracles
from .bench import (
    SUMMARY_COLUMNS,
    ExperimentConfig,
    f_sweep,
    fit_loglog_slope,
    read_summary_csv,
    run_experiment,
    static_lambda_grid,
)
from .engine import DEFAULT_BUDGET_FACTOR

# flag name -> ExperimentConfig field
_OVERRIDES = {
    "n": "n_values",
    "algo": "algorithm",
    "reps": "replicates",
    "F": "F",
    "r": "r",
    "lam": "lam",
    "budget_factor": "budget_factor",
    "seed": "base_seed",
    "out": "out",
    "trace": "trace",
    "workers": "workers",
}


def _ints(text: str) -> list[int]:
    return [int(v) for v in text.split(",") if v]


def _floats(text: str) -> list[float]:
    return [float(v) for v in text.split(",") if v]


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--reps", type=int, help="replicates per configuration")
    p.add_argument("--budget-factor", type=float, help="evaluation budget as a multiple of n")
    p.add_argument("--seed", type=int, help="base seed")
    p.add_argument("--out", help="output directory")
    p.add_argument("--workers", type=int, help="worker processes")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ollga", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="replicated runs over a list of problem sizes")
    run.add_argument("--config", help="JSON file with ExperimentConfig fields")
    run.add_argument("--algo", help="ga-static, ga-fitness-dependent, ga-self-adjusting, "
                                    "one-plus-one-ea or rls")
    run.add_argument("--n", type=_ints, help="comma-separated problem sizes")
    run.add_argument("--F", type=float)
    run.add_argument("--r", type=float)
    run.add_argument("--lambda", dest="lam", type=float)
    run.add_argument("--trace", action="store_true", default=None, help="write per-run traces")
    _common(run)

    grid = sub.add_parser("grid", help="static population-size grid at one n")
    grid.add_argument("--n", type=int, required=True)
    grid.add_argument("--lambda", dest="lam", type=_floats, required=True,
                      help="comma-separated population sizes")
    _common(grid)

    sweep = sub.add_parser("sweep-f", help="update-strength sweep of the self-adjusting GA")
    sweep.add_argument("--n", type=int, required=True)
    sweep.add_argument("--F", type=_floats, required=True, help="comma-separated F values")
    sweep.add_argument("--r", type=float, default=5.0)
    _common(sweep)

    orc = sub.add_parser("oracle", help="Monte-Carlo checks of the success-probability bounds")
    orc.add_argument("check", choices=["mutation", "crossover", "iteration", "drift", "all"])
    orc.add_argument("--samples", type=int, default=100_000)
    orc.add_argument("--n", type=int, default=400, help="problem size for the iteration check")
    orc.add_argument("--seed", type=int, default=0)
    orc.add_argument("--out", help="CSV file for the oracle rows")

    fit = sub.add_parser("fit", help="log-log slope of mean evaluations against n")
    fit.add_argument("csv", help="summary.csv written by `run`")
    return parser


def _cmd_run(args) -> list:
    data = json.loads(Path(args.config).read_text()) if args.config else {}
    for flag, key in _OVERRIDES.items():
        value = getattr(args, flag, None)
        if value is not None:
            data[key] = value
    if "algorithm" not in data or "n_values" not in data:
        raise SystemExit("run: --algo and --n are required (flag or config file)")
    cfg = ExperimentConfig.from_dict(data)
    return run_experiment(cfg)


def _grid_kwargs(args) -> dict:
    return dict(
        replicates=args.reps or 1,
        seed=args.seed or 0,
        budget_factor=args.budget_factor or DEFAULT_BUDGET_FACTOR,
        out=args.out,
        workers=args.workers or 1,
    )


ORACLE_COLUMNS = ["check", "params", "estimate", "samples", "std_error",
                  "lower_3sigma", "upper_3sigma", "reference", "passed"]


def _oracle_rows(check: str, samples: int, n: int, rng) -> list[list]:
    rows = []

    def emit(name, params, rep, reference, passed):
        rows.append([name, params, rep.estimate, rep.samples, rep.std_error,
                     rep.lower_3sigma, rep.upper_3sigma, reference, int(passed)])

    if check in ("mutation", "all"):
        for n_, f, lam, ell in oracles.MUTATION_GRID:
            rep, bound = oracles.verify_mutation_phase_bound(n_, f, lam, ell, samples, rng)
            emit("mutation", f"n={n_};f={f};lambda={lam};ell={ell}", rep, bound,
                 rep.estimate >= bound - 3 * rep.std_error)
    if check in ("crossover", "all"):
        for n_, d, ell, lam, fixed in oracles.CROSSOVER_GRID:
            x, xp = oracles.conditioned_pair(n_, d, fixed, ell - fixed)
            rep, bound = oracles.verify_crossover_phase_bound(n_, x, xp, ell, lam, samples, rng)
            emit("crossover", f"n={n_};d={d};ell={ell};lambda={lam};corrected={fixed}", rep,
                 bound, rep.estimate >= bound - 3 * rep.std_error)
    if check in ("iteration", "all"):
        for d in oracles.probe_states(n):
            spec = oracles.StateSpec.from_multiplier(n, d, 8)
            rep = oracles.estimate_iteration_success(spec, samples, rng)
            emit("iteration", f"n={n};d={d};lambda={spec.lam:g};C0=8", rep, 0.2,
                 rep.lower_3sigma > 0.2)
    if check in ("drift", "all"):
        for r in (3, 5):
            for q in (0.1, 0.2, 0.31):
                est = oracles.random_walk_drift(q, r, samples * 10, rng)
                row = [
                    "drift", f"q={q};r={r}", est.mean, est.steps, est.std_error,
                    est.mean - 3 * est.std_error, est.mean + 3 * est.std_error,
                    est.closed_form, int(abs(est.z) <= 3),
                ]
                rows.append(row)
    return rows


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "run":
        _print_rows(_cmd_run(args))
    elif args.command == "grid":
        _print_rows(static_lambda_grid(args.n, args.lam, **_grid_kwargs(args)))
    elif args.command == "sweep-f":
        _print_rows(f_sweep(args.n, args.F, r=args.r, **_grid_kwargs(args)), extra=("cap_occupancy",))
    elif args.command == "oracle":
        rows = _oracle_rows(args.check, args.samples, args.n, np.random.default_rng(args.seed))
        fh = open(args.out, "w", newline="") if args.out else sys.stdout
        try:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(ORACLE_COLUMNS)
            writer.writerows(rows)
        finally:
            if args.out:
                fh.close()
        return 0 if all(row[-1] for row in rows) else 1
    elif args.command == "fit":
        rows = read_summary_csv(args.csv)
        groups: dict[str, list] = {}
        for row in rows:
            groups.setdefault(row.algorithm, []).append(row)
        for label, group in groups.items():
            slope, intercept, r2 = fit_loglog_slope(group)
            print(f"{label}\tslope={slope:.4f}\tintercept={intercept:.4f}\tr2={r2:.4f}")
    return 0


def _print_rows(rows, extra=()) -> None:
    cols = [*SUMMARY_COLUMNS, *extra]
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(cols)
    for row in rows:
        writer.writerow([f"{v:.6g}" if isinstance(v, float) else v
                         for v in (getattr(row, c) for c in cols)])


if __name__ == "__main__":
    raise SystemExit(main())

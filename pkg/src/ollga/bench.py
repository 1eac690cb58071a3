"""Replicated experiments, summary statistics and log-log slope fits."""

from __future__ import annotations

import csv
import hashlib
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path

import numpy as np

from .control import FITNESS_DEPENDENT, SELF_ADJUSTING, STATIC
from .engine import DEFAULT_BUDGET_FACTOR, ONE_PLUS_ONE_EA, RLS, TRACE_COLUMNS, RunResult
from .fast import simulate_baseline, simulate_ga

GA_STATIC = "ga-static"
GA_FITNESS_DEPENDENT = "ga-fitness-dependent"
GA_SELF_ADJUSTING = "ga-self-adjusting"
ALGORITHMS = (GA_STATIC, GA_FITNESS_DEPENDENT, GA_SELF_ADJUSTING, ONE_PLUS_ONE_EA, RLS)

_GA_MODES = {GA_STATIC: STATIC, GA_FITNESS_DEPENDENT: FITNESS_DEPENDENT,
             GA_SELF_ADJUSTING: SELF_ADJUSTING}

Z95 = 1.959963984540054


def _fmt(x: float) -> str:
    x = float(x)
    return str(int(x)) if x.is_integer() else repr(x)


@dataclass
class ExperimentConfig:
    algorithm: str
    n_values: list[int]
    replicates: int = 1
    F: float | None = None
    r: float | None = None
    lam: float | None = None
    budget_factor: float = DEFAULT_BUDGET_FACTOR
    base_seed: int = 0
    out: str | None = None
    trace: bool = False
    rates: str = "real"
    workers: int = 1

    def __post_init__(self):
        self.n_values = [int(n) for n in self.n_values]
        self.validate()

    def validate(self) -> None:
        if self.algorithm not in ALGORITHMS:
            raise ValueError(f"unknown algorithm {self.algorithm!r}; choose from {ALGORITHMS}")
        if self.replicates < 1:
            raise ValueError("replicates must be at least 1")
        if not self.n_values:
            raise ValueError("n_values must not be empty")
        if any(n < 1 for n in self.n_values):
            raise ValueError("every n must be positive")
        if any(a >= b for a, b in zip(self.n_values, self.n_values[1:])):
            raise ValueError("n_values must be strictly increasing")
        if self.budget_factor <= 0:
            raise ValueError("budget_factor must be positive")
        if self.algorithm != GA_SELF_ADJUSTING and (self.F is not None or self.r is not None):
            raise ValueError(f"F and r only apply to {GA_SELF_ADJUSTING}")
        if self.algorithm == GA_STATIC and self.lam is None:
            raise ValueError(f"{GA_STATIC} needs a population size")
        if self.algorithm in (GA_FITNESS_DEPENDENT, ONE_PLUS_ONE_EA, RLS) and self.lam is not None:
            raise ValueError(f"lambda does not apply to {self.algorithm}")
        if self.algorithm == GA_SELF_ADJUSTING:
            if self.F is not None and not self.F > 1:
                raise ValueError("F must exceed 1")
            if self.r is not None and not self.r >= 2:
                raise ValueError("r must be at least 2")
        if self.lam is not None and not 1 <= self.lam <= min(self.n_values):
            raise ValueError("lambda must lie in [1, n] for every n")
        if self.rates not in ("real", "rounded"):
            raise ValueError("rates must be 'real' or 'rounded'")

    @property
    def label(self) -> str:
        if self.algorithm == GA_STATIC:
            return f"{GA_STATIC}(lambda={_fmt(self.lam)})"
        if self.algorithm == GA_SELF_ADJUSTING:
            label = f"{GA_SELF_ADJUSTING}(F={_fmt(self.F or 1.5)},r={_fmt(self.r or 5)}"
            if self.lam not in (None, 1):
                label += f",lambda0={_fmt(self.lam)}"
            return label + ")"
        return self.algorithm

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> "ExperimentConfig":
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        return cls(**data)


@dataclass
class SummaryRow:
    algorithm: str
    n: int
    replicates: int
    mean_evals: float
    median_evals: float
    std_evals: float
    ci95_low: float
    ci95_high: float
    success_rate: float
    mean_evals_over_n: float
    cap_occupancy: float = field(default=0.0, repr=False)


SUMMARY_COLUMNS = [f.name for f in fields(SummaryRow)][:10]


def derive_seed(base_seed: int, label: str, n: int, replicate: int) -> int:
    """Stable 64-bit seed for one run; independent of how many replicates exist."""
    key = f"{base_seed}|{label}|{n}|{replicate}".encode()
    return int.from_bytes(hashlib.sha256(key).digest()[:8], "little")


def _run_one(args) -> RunResult:
    cfg, n, seed = args
    budget = int(math.ceil(cfg.budget_factor * n))
    if cfg.algorithm in _GA_MODES:
        return simulate_ga(
            n,
            mode=_GA_MODES[cfg.algorithm],
            lam=cfg.lam if cfg.lam is not None else 1.0,
            F=cfg.F if cfg.F is not None else 1.5,
            r=cfg.r if cfg.r is not None else 5.0,
            budget=budget,
            seed=seed,
            rates=cfg.rates,
            record_trace=cfg.trace,
        )
    return simulate_baseline(cfg.algorithm, n, budget=budget, seed=seed, record_trace=cfg.trace)


def summarize(label: str, n: int, results: list[RunResult]) -> SummaryRow:
    evals = np.array([r.total_evals for r in results], dtype=float)
    k = len(evals)
    mean = float(evals.mean())
    std = float(evals.std(ddof=1)) if k > 1 else 0.0
    half = Z95 * std / math.sqrt(k)
    return SummaryRow(
        algorithm=label,
        n=n,
        replicates=k,
        mean_evals=mean,
        median_evals=float(np.median(evals)),
        std_evals=std,
        ci95_low=mean - half,
        ci95_high=mean + half,
        success_rate=float(np.mean([r.found_optimum for r in results])),
        mean_evals_over_n=mean / n,
        cap_occupancy=float(np.mean([r.cap_fraction for r in results])),
    )


def execute(cfg: ExperimentConfig) -> dict[int, list[RunResult]]:
    """Run every replicate of every size; results are ordered by replicate index."""
    cfg.validate()
    jobs = [(cfg, n, derive_seed(cfg.base_seed, cfg.label, n, i))
            for n in cfg.n_values for i in range(cfg.replicates)]
    if cfg.workers > 1:
        with ProcessPoolExecutor(cfg.workers) as pool:
            results = list(pool.map(_run_one, jobs, chunksize=max(1, len(jobs) // (4 * cfg.workers))))
    else:
        results = [_run_one(job) for job in jobs]
    by_n: dict[int, list[RunResult]] = {n: [] for n in cfg.n_values}
    for (_, n, _), res in zip(jobs, results):
        by_n[n].append(res)
    return by_n


def run_experiment(cfg: ExperimentConfig) -> list[SummaryRow]:
    """Run the configured experiment and, if ``cfg.out`` is set, write it to disk.

    The output directory receives ``summary.csv``, ``manifest.json`` and,
    with tracing on, ``traces/<label>_n<n>_r<i>.csv``.
    """
    if cfg.out is not None:
        _prepare_out(cfg.out)
    by_n = execute(cfg)
    rows = [summarize(cfg.label, n, by_n[n]) for n in cfg.n_values]
    if cfg.out is not None:
        out = Path(cfg.out)
        write_summary_csv(out / "summary.csv", rows)
        write_manifest(out / "manifest.json", [cfg], rows)
        if cfg.trace:
            for n, results in by_n.items():
                for i, res in enumerate(results):
                    write_trace_csv(out / "traces" / f"{_safe(cfg.label)}_n{n}_r{i}.csv", res)
    return rows


def _safe(label: str) -> str:
    return "".join(ch if ch.isalnum() or ch in "-_.=" else "_" for ch in label).strip("_")


def _prepare_out(path) -> None:
    out = Path(path)
    try:
        out.mkdir(parents=True, exist_ok=True)
        probe = out / ".write-test"
        probe.write_text("")
        probe.unlink()
    except OSError as exc:
        raise OSError(f"output path {out} is not writable: {exc}") from exc


def _cell(value) -> str:
    if isinstance(value, bool):
        return str(int(value))
    if isinstance(value, float):
        return repr(value)
    return str(value)


def write_summary_csv(path, rows: list[SummaryRow], extra: tuple[str, ...] = ()) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    columns = SUMMARY_COLUMNS + list(extra)
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_cell(getattr(row, col)) for col in columns])


def read_summary_csv(path) -> list[SummaryRow]:
    rows = []
    with open(path, newline="") as fh:
        for rec in csv.DictReader(fh):
            rows.append(SummaryRow(
                algorithm=rec["algorithm"],
                n=int(rec["n"]),
                replicates=int(rec["replicates"]),
                mean_evals=float(rec["mean_evals"]),
                median_evals=float(rec["median_evals"]),
                std_evals=float(rec["std_evals"]),
                ci95_low=float(rec["ci95_low"]),
                ci95_high=float(rec["ci95_high"]),
                success_rate=float(rec["success_rate"]),
                mean_evals_over_n=float(rec["mean_evals_over_n"]),
                cap_occupancy=float(rec.get("cap_occupancy") or 0.0),
            ))
    return rows


def write_trace_csv(path, result: RunResult) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(TRACE_COLUMNS)
        for rec in result.trace:
            writer.writerow([_cell(v) for v in rec])


def write_manifest(path, configs: list[ExperimentConfig], rows: list[SummaryRow]) -> None:
    from . import __version__

    censored = [{"algorithm": r.algorithm, "n": r.n, "success_rate": r.success_rate}
                for r in rows if r.success_rate < 1]
    doc = {
        "library": "ollga",
        "version": __version__,
        "configs": [c.to_dict() for c in configs],
        "seeds": "sha256(f'{base_seed}|{label}|{n}|{replicate}')[:8], little-endian",
        "censored": censored,
    }
    Path(path).write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")


def fit_loglog_slope(rows: list[SummaryRow]) -> tuple[float, float, float]:
    """Least-squares fit of log(mean_evals) against log(n); returns (slope, intercept, r^2)."""
    ns = np.array([r.n for r in rows], dtype=float)
    if len(set(ns)) < 3:
        raise ValueError("need at least 3 distinct n values for a slope fit")
    x = np.log(ns)
    y = np.log(np.array([r.mean_evals for r in rows], dtype=float))
    slope, intercept = np.polyfit(x, y, 1)
    resid = y - (slope * x + intercept)
    ss_res = float(resid @ resid)
    ss_tot = float(((y - y.mean()) ** 2).sum())
    r2 = 1.0 - ss_res / ss_tot if ss_tot > 0 else 1.0
    return float(slope), float(intercept), float(r2)


def static_lambda_grid(n: int, lambda_values, replicates: int, seed: int = 0,
                       budget_factor: float = DEFAULT_BUDGET_FACTOR, out=None,
                       workers: int = 1) -> list[SummaryRow]:
    """One summary row per static population size at a single problem size."""
    cfgs = [ExperimentConfig(GA_STATIC, [n], replicates, lam=lam, budget_factor=budget_factor,
                             base_seed=seed, workers=workers)
            for lam in lambda_values]
    rows = [summarize(cfg.label, n, execute(cfg)[n]) for cfg in cfgs]
    if out is not None:
        _prepare_out(out)
        write_summary_csv(Path(out) / "summary.csv", rows)
        write_manifest(Path(out) / "manifest.json", cfgs, rows)
    return rows


def f_sweep(n: int, F_values, r: float = 5.0, replicates: int = 50, seed: int = 0,
            budget_factor: float = DEFAULT_BUDGET_FACTOR, out=None,
            workers: int = 1) -> list[SummaryRow]:
    """One summary row per update strength, including lambda-cap occupancy."""
    cfgs = [ExperimentConfig(GA_SELF_ADJUSTING, [n], replicates, F=F, r=r,
                             budget_factor=budget_factor, base_seed=seed, workers=workers)
            for F in F_values]
    rows = [summarize(cfg.label, n, execute(cfg)[n]) for cfg in cfgs]
    if out is not None:
        _prepare_out(out)
        write_summary_csv(Path(out) / "summary.csv", rows, extra=("cap_occupancy",))
        write_manifest(Path(out) / "manifest.json", cfgs, rows)
    return rows

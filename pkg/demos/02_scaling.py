"""Runtime scaling: linear for the adaptive schemes, superlinear for fixed ones.

Uses the distance-level simulator so that sizes up to 8192 take seconds.
Run: python3 demos/02_scaling.py
"""

from ollga.bench import ExperimentConfig, fit_loglog_slope, run_experiment

ns = [2**k for k in range(7, 14)]
configs = [
    ExperimentConfig("ga-self-adjusting", ns, replicates=30, F=1.5, r=5.0),
    ExperimentConfig("ga-fitness-dependent", ns, replicates=30),
    ExperimentConfig("ga-static", ns, replicates=30, lam=4),
    ExperimentConfig("one-plus-one-ea", ns, replicates=30),
]

print(f"{'algorithm':32s}" + "".join(f"{n:>8d}" for n in ns) + "   slope")
for cfg in configs:
    rows = run_experiment(cfg)
    slope, _, _ = fit_loglog_slope(rows)
    print(f"{cfg.label:32s}" + "".join(f"{r.mean_evals_over_n:8.2f}" for r in rows)
          + f"   {slope:.3f}")
print("(entries are mean evaluations divided by n)")

"""Monte-Carlo estimates of per-phase and per-iteration success probabilities,
next to their analytic lower bounds.

Run: python3 demos/05_success_probabilities.py
"""

import math

import numpy as np

from ollga.oracles import (
    StateSpec,
    conditioned_pair,
    estimate_iteration_success,
    probe_states,
    random_walk_drift,
    sweep_multiplier,
    verify_crossover_phase_bound,
    verify_mutation_phase_bound,
)

rng = np.random.default_rng(5)
samples = 50_000

print("mutation phase: best of lambda mutants keeps more than f - ell")
for n, f, lam, ell in [(100, 90, 4, 4), (100, 99, 8, 1), (50, 25, 1, 5)]:
    rep, bound = verify_mutation_phase_bound(n, f, lam, ell, samples, rng)
    print(f"  n={n} f={f} lambda={lam} ell={ell}: {rep.estimate:.4f} +- {rep.std_error:.4f}"
          f"  bound {bound:.4f}")

print("crossover phase: some offspring beats the parent")
for n, d, ell, lam, fixed in [(50, 10, 4, 4, 1), (100, 5, 10, 8, 1)]:
    x, xp = conditioned_pair(n, d, fixed, ell - fixed)
    rep, bound = verify_crossover_phase_bound(n, x, xp, ell, lam, samples, rng)
    print(f"  n={n} ell={ell} lambda={lam}: {rep.estimate:.4f}  bound {bound:.4f}")

print("whole iteration at n=400, lambda = C0 * ceil(sqrt(n/d))")
for d in probe_states(400):
    c0, reports = sweep_multiplier(400, d, samples, rng)
    cells = "  ".join(f"C0={k}: {v.estimate:.3f}" for k, v in reports.items())
    print(f"  d={d:3d}  {cells}  -> smallest C0 above 0.2: {c0}")

print("one wrong bit, large lambda: success saturates near 1 - exp(-1/e) =",
      f"{1 - math.exp(-1 / math.e):.4f}")
for lam in (10, 50, 400):
    print(f"  lambda={lam:3d}: {estimate_iteration_success(StateSpec(400, 1, lam), samples, rng).estimate:.4f}")

print("drift of log_F(lambda) under the rule, per iteration")
for q in (0.1, 0.2, 0.31):
    est = random_walk_drift(q, 5, 10**6, rng)
    print(f"  q={q}: simulated {est.mean:+.4f}, closed form {est.closed_form:+.4f}")

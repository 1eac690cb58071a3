"""Solve one OneMax instance with the self-adjusting GA and look at the run.

Run: python3 demos/01_quickstart.py
"""

import numpy as np

from ollga import GaParams, OneMaxInstance, run_ga

n = 200
params = GaParams(n, F=1.5, r=5.0, seed=1)
result = run_ga(params)

print(f"n={n}: optimum found={result.found_optimum} after {result.total_evals} evaluations "
      f"({result.total_evals / n:.2f} per bit) in {result.total_iters} iterations")

# Every iteration is recorded.  Population size shrinks after an improving
# iteration and grows slowly otherwise.
for rec in result.trace[:8]:
    print(f"  iter {rec.iter:3d}  lambda={rec.lambda_real:6.3f} ({rec.lambda_int})  ell={rec.ell:2d}"
          f"  f: {rec.fitness_before:.0f} -> {rec.fitness_after:.0f}")
print(f"  ... largest lambda reached: {max(r.lambda_real for r in result.trace):.2f}")

# The target can be fixed explicitly; the instance counts every query.
rng = np.random.default_rng(0)
inst = OneMaxInstance.random(64, rng)
res = run_ga(GaParams(64), instance=inst, rng=rng)
print(f"explicit instance: {inst.eval_count} queries, best agreement {inst.best_seen}/64")

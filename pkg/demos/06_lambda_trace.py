"""Population size along a run, compared with the fitness-dependent choice
lambda* = ceil(sqrt(n / (n - f))).

This is also the pilot calibration for the tracking check in the acceptance
suite: it prints the share of iterations with lambda_int <= k * lambda* for
several k.  The multiplier 16 used there was fixed from this output.
Run: python3 demos/06_lambda_trace.py
"""

import numpy as np

from ollga import lambda_star, simulate_ga

n = 1000
res = simulate_ga(n, F=1.5, seed=6, record_trace=True)
print(f"one run at n={n}: {res.total_evals} evaluations, {res.total_iters} iterations")
step = max(1, len(res.trace) // 25)
for rec in res.trace[::step]:
    ls = lambda_star(n, int(rec.fitness_before))
    print(f"  f={rec.fitness_before:5.0f}  lambda={rec.lambda_real:7.2f}  lambda*={ls:3d}  "
          + "*" * int(rec.lambda_real))

pairs = []
for seed in range(100):
    r = simulate_ga(n, F=1.5, seed=10_000 + seed, record_trace=True)
    pairs += [(t.lambda_int, lambda_star(n, int(t.fitness_before))) for t in r.trace]
lam_int, lam_star = np.array(pairs).T
print(f"pilot over {len(pairs)} iterations from 100 runs:")
for k in (1, 2, 4, 8, 16):
    print(f"  lambda_int <= {k:2d} * lambda*: {np.mean(lam_int <= k * lam_star):.4f}")

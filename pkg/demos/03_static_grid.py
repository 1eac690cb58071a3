"""A fixed population size has a sweet spot: too small and the mutation
phase is weak, too large and each iteration is expensive.

Run: python3 demos/03_static_grid.py
"""

import numpy as np

from ollga.bench import static_lambda_grid

n = 1000
grid = [1, 2, 3, 4, 6, 8, 12, 16, 32, 64]
rows = static_lambda_grid(n, grid, replicates=100, seed=3)
for lam, row in zip(grid, rows):
    bar = "#" * int(row.mean_evals / 1000)
    print(f"lambda={lam:3d}  mean={row.mean_evals:8.0f}  "
          f"ci=[{row.ci95_low:7.0f}, {row.ci95_high:7.0f}]  {bar}")
best = grid[int(np.argmin([r.mean_evals for r in rows]))]
print(f"best static lambda at n={n}: {best}  (sqrt(ln n)={np.sqrt(np.log(n)):.2f})")

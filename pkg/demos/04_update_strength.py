"""How the update strength F of the one-fifth rule changes runtime.

Also reports the share of iterations spent with lambda pinned at n.
Run: python3 demos/04_update_strength.py
"""

from ollga.bench import f_sweep

n = 1000
for row in f_sweep(n, [1.2, 1.5, 2.0, 3.0, 4.0, 6.0], replicates=50, seed=4):
    print(f"{row.algorithm:30s} mean/n={row.mean_evals_over_n:6.2f}  "
          f"success={row.success_rate:.2f}  time at lambda=n: {row.cap_occupancy:.4f}")

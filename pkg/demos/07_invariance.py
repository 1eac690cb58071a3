"""The GA only compares fitness values, so any strictly increasing transform
of OneMax leaves a seeded run unchanged.

Run: python3 demos/07_invariance.py
"""

import math

import numpy as np

from ollga import GaParams, OneMaxInstance, run_ga

n, seed = 80, 7
for name, g in [("f", None), ("2f + 7", lambda f: 2 * f + 7), ("exp(f/3)", lambda f: math.exp(f / 3))]:
    rng = np.random.default_rng(seed)
    inst = OneMaxInstance.random(n, rng, transform=g)
    res = run_ga(GaParams(n), instance=inst, rng=rng)
    lams = [round(r.lambda_real, 6) for r in res.trace]
    print(f"{name:9s} evals={res.total_evals:5d} iters={res.total_iters:4d} "
          f"lambda fingerprint={hash(tuple(lams)) & 0xFFFFFFFF:08x}")

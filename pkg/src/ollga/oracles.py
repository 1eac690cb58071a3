"""Monte-Carlo checks of the success probabilities of one GA iteration.

The mutation- and crossover-phase estimators simulate explicit bit arrays
and recount fitness from scratch, so they do not share code with either
engine.  The whole-iteration estimator runs the engine's own iteration.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numba as nb
import numpy as np

from .bitstring import BitString, DimensionError
from .control import lambda_star
from .fast import count_iteration_successes

MIN_SAMPLES = 1000


@dataclass(frozen=True)
class EstimateReport:
    estimate: float
    samples: int
    std_error: float
    lower_3sigma: float
    upper_3sigma: float

    @classmethod
    def from_counts(cls, hits: int, samples: int) -> "EstimateReport":
        if samples < 1:
            raise ValueError("need at least one sample")
        q = hits / samples
        se = math.sqrt(q * (1 - q) / samples)
        return cls(q, samples, se, q - 3 * se, q + 3 * se)


@dataclass(frozen=True)
class StateSpec:
    """A OneMax state at distance ``d`` from the target, run with population size ``lam``."""

    n: int
    d: int
    lam: float
    C0: float | None = None

    def __post_init__(self):
        if not 1 <= self.d <= self.n:
            raise ValueError(f"distance must lie in [1, n], got {self.d}")
        if not 1 <= self.lam <= self.n:
            raise ValueError(f"lambda must lie in [1, n], got {self.lam}")

    @classmethod
    def from_multiplier(cls, n: int, d: int, C0: float) -> "StateSpec":
        """lambda = C0 * ceil(sqrt(n/d)), capped at n."""
        lam = min(C0 * lambda_star(n, n - d), n)
        return cls(n, d, lam, C0)


def estimate_iteration_success(spec: StateSpec, samples: int,
                               rng: np.random.Generator) -> EstimateReport:
    """Fraction of single iterations from ``spec`` that strictly improve the fitness."""
    if samples < MIN_SAMPLES:
        raise ValueError(f"need at least {MIN_SAMPLES} samples, got {samples}")
    hits = count_iteration_successes(spec.n, spec.d, spec.lam, samples, rng)
    return EstimateReport.from_counts(hits, samples)


def sweep_multiplier(n: int, d: int, samples: int, rng: np.random.Generator,
                     multipliers=(2, 4, 8, 16), threshold: float = 0.2):
    """Smallest C0 whose success probability clears ``threshold`` by 3 standard errors.

    Returns ``(C0 or None, {C0: EstimateReport})``.
    """
    reports = {}
    passing = None
    for C0 in multipliers:
        rep = estimate_iteration_success(StateSpec.from_multiplier(n, d, C0), samples, rng)
        reports[C0] = rep
        if passing is None and rep.lower_3sigma > threshold:
            passing = C0
    return passing, reports


@nb.njit(cache=True)
def _mutation_hits(rng, n, d, lam, ell, samples):
    # target is all ones; x has its first d bits wrong
    x = np.ones(n, dtype=np.uint8)
    x[:d] = 0
    f = n - d
    perm = np.arange(n)
    buf = np.empty(n, dtype=np.uint8)
    hits = 0
    for _ in range(samples):
        best = -1
        for _ in range(lam):
            buf[:] = x
            for j in range(ell):
                k = rng.integers(j, n)
                t = perm[j]
                perm[j] = perm[k]
                perm[k] = t
                buf[perm[j]] ^= 1
            fit = 0
            for i in range(n):
                fit += buf[i]
            if fit > best:
                best = fit
        if best > f - ell:
            hits += 1
    return hits


@nb.njit(cache=True)
def _crossover_hits(rng, x, xp, lam, c, samples):
    # x, xp are agreement vectors with the target
    n = x.shape[0]
    f = 0
    for i in range(n):
        f += x[i]
    hits = 0
    for _ in range(samples):
        for _ in range(lam):
            fit = 0
            for i in range(n):
                fit += xp[i] if rng.random() < c else x[i]
            if fit > f:
                hits += 1
                break
    return hits


def mutation_phase_bound(n: int, f: int, lam: int, ell: int) -> float:
    return 1.0 - (f / n) ** (lam * ell)


def crossover_phase_bound(lam: int, ell: int, c: float | None = None) -> float:
    c = 1.0 / lam if c is None else c
    return 1.0 - (1.0 - c * (1.0 - c) ** (ell - 1)) ** lam


def verify_mutation_phase_bound(n: int, f: int, lam: int, ell: int, samples: int,
                                rng: np.random.Generator):
    """Estimate Pr[best of lam mutants has fitness > f - ell] for a fixed step size.

    Returns ``(EstimateReport, 1 - (f/n)**(lam*ell))``.
    """
    if not 0 < ell <= n:
        raise ValueError(f"step size must lie in (0, n], got {ell}")
    if not 0 <= f < n:
        raise ValueError(f"fitness must lie in [0, n), got {f}")
    lam = int(lam)
    if lam < 1:
        raise ValueError(f"lambda must be at least 1, got {lam}")
    hits = _mutation_hits(rng, n, n - f, lam, ell, samples)
    return EstimateReport.from_counts(int(hits), samples), mutation_phase_bound(n, f, lam, ell)


def conditioned_pair(n: int, d: int, corrected: int, broken: int):
    """Parent at distance ``d`` from the all-ones target, and a mutant of it that
    corrects ``corrected`` wrong bits and breaks ``broken`` right ones."""
    if not (0 <= corrected <= d <= n and 0 <= broken <= n - d):
        raise ValueError("flip counts incompatible with the distance")
    x = np.ones(n, dtype=np.uint8)
    x[:d] = 0
    xp = x.copy()
    xp[:corrected] = 1
    xp[d:d + broken] = 0
    return BitString.from_bits(x), BitString.from_bits(xp)


def verify_crossover_phase_bound(n: int, x: BitString, xprime: BitString, ell: int, lam: int,
                                 samples: int, rng: np.random.Generator,
                                 target: BitString | None = None):
    """Estimate Pr[some crossover offspring beats x] for fixed x, x' at distance ell.

    The crossover probability is 1/lam.  Returns
    ``(EstimateReport, 1 - (1 - c(1-c)**(ell-1))**lam)``.
    """
    target = BitString.ones(n) if target is None else target
    if not (x.n == xprime.n == target.n == n):
        raise DimensionError("x, xprime and target must all have length n")
    if x.hamming(xprime) != ell or ell < 1:
        raise ValueError(f"x and xprime must differ in exactly ell >= 1 positions, got {x.hamming(xprime)}")
    fx = n - x.hamming(target)
    fxp = n - xprime.hamming(target)
    if not fxp > fx - ell:
        raise ValueError("xprime corrects no wrong bit of x; the conditioning is unsatisfiable")
    lam = int(lam)
    agree_x = (x.to_bits() == target.to_bits()).astype(np.uint8)
    agree_xp = (xprime.to_bits() == target.to_bits()).astype(np.uint8)
    hits = _crossover_hits(rng, agree_x, agree_xp, lam, 1.0 / lam, samples)
    return EstimateReport.from_counts(int(hits), samples), crossover_phase_bound(lam, ell)


@dataclass(frozen=True)
class DriftEstimate:
    mean: float
    std_error: float
    closed_form: float
    steps: int

    @property
    def z(self) -> float:
        return (self.mean - self.closed_form) / self.std_error if self.std_error else 0.0


def random_walk_drift(q: float, r: float, steps: int, rng: np.random.Generator) -> DriftEstimate:
    """Walk on the log_F(lambda) scale: -1 with probability q, +1/(r-1) otherwise."""
    if not 0 < q < 1:
        raise ValueError(f"q must lie in (0, 1), got {q}")
    up = 1.0 / (r - 1.0)
    step = np.where(rng.random(steps) < q, -1.0, up)
    return DriftEstimate(
        mean=float(step.mean()),
        std_error=float(step.std(ddof=1) / math.sqrt(steps)),
        closed_form=(1 - q) * up - q,
        steps=steps,
    )


# (n, f, lambda, ell)
MUTATION_GRID = [
    (20, 19, 2, 1),
    (20, 10, 1, 1),
    (20, 15, 3, 2),
    (30, 29, 1, 1),
    (50, 45, 2, 3),
    (50, 49, 4, 1),
    (50, 25, 1, 5),
    (100, 90, 4, 4),
    (100, 99, 8, 1),
    (100, 95, 2, 2),
    (200, 190, 8, 2),
    (200, 199, 16, 1),
]

# (n, d, ell, lambda, corrected); the mutant corrects `corrected` bits and
# breaks ell - corrected
CROSSOVER_GRID = [
    (20, 5, 1, 1, 1),
    (20, 5, 2, 2, 1),
    (30, 3, 3, 2, 1),
    (40, 2, 2, 4, 2),
    (50, 10, 4, 4, 1),
    (50, 20, 3, 3, 2),
    (80, 8, 12, 12, 1),
    (100, 10, 5, 5, 1),
    (100, 5, 10, 8, 1),
    (100, 50, 8, 8, 3),
    (200, 20, 6, 4, 1),
    (200, 100, 16, 16, 4),
]


def probe_states(n: int = 400):
    """Distances n/2, n/10 and ceil(sqrt(n))."""
    return [n // 2, n // 10, math.isqrt(n - 1) + 1]


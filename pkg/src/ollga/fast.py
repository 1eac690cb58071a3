"""Distance-level simulator for OneMax runs.

OneMax is invariant under permutations of positions, so the runtime
distribution of any unbiased algorithm only depends on the distance d of
the incumbent to the target.  The kernels below track d directly:

* a mutant flipping ``ell`` uniform positions corrects a hypergeometric
  number ``h`` of the ``d`` wrong bits, so its fitness is ``f - ell + 2h``;
* a crossover offspring takes each of the ``ell`` positions where ``x'``
  differs from ``x`` independently with probability ``c``, i.e. ``a`` of
  the ``h`` corrected and ``b`` of the ``ell - h`` broken positions with
  ``a ~ Bin(h, c)``, ``b ~ Bin(ell - h, c)``; it equals ``x`` iff a + b == 0.

Ties among mutants share ``h`` and ties among offspring share the
resulting distance, so uniform tie-breaking never changes the trajectory
of ``d``.  Every evaluation is charged exactly as in the bitstring engine.
"""

from __future__ import annotations

import math

import numba as nb
import numpy as np

from .control import FITNESS_DEPENDENT, SELF_ADJUSTING, STATIC
from .engine import (
    DEFAULT_BUDGET_FACTOR,
    ONE_PLUS_ONE_EA,
    RLS,
    IterationRecord,
    RunResult,
)

_MODES = {STATIC: 0, FITNESS_DEPENDENT: 1, SELF_ADJUSTING: 2}

# trace columns, kept as float64 rows inside the kernel
_T_LAM, _T_LAMINT, _T_ELL, _T_FB, _T_FA, _T_SUCC, _T_EVALS = range(7)


@nb.njit(cache=True)
def _seq_hypergeom(rng, total, good, draws):
    # number of good items among `draws` taken without replacement;
    # iterate over whichever of draws/good is smaller
    got = 0
    if draws <= good:
        for i in range(draws):
            if rng.random() * (total - i) < good - got:
                got += 1
    else:
        slots = draws
        for i in range(good):
            if rng.random() * (total - i) < slots:
                slots -= 1
                got += 1
    return got


@nb.njit(cache=True)
def hypergeom(rng, total, good, draws):
    """Hypergeometric draw in O(min(draws, total-draws, good, total-good)) time."""
    if draws <= 0 or good <= 0:
        return 0
    if good >= total:
        return draws
    if draws >= total:
        return good
    # count over the complement of the drawn set and/or of the good class
    flip_draws = draws > total - draws
    if flip_draws:
        draws = total - draws
    flip_good = good > total - good
    got = _seq_hypergeom(rng, total, total - good if flip_good else good, draws)
    if flip_good:
        got = draws - got
    if flip_draws:
        got = good - got
    return got


@nb.njit(cache=True)
def round_half_up(lam):
    base = math.floor(lam)
    if lam - base >= 0.5:
        return int(base) + 1
    return int(base)


@nb.njit(cache=True)
def ceil_sqrt_ratio(n, d):
    # smallest k >= 1 with k*k*d >= n, i.e. ceil(sqrt(n/d)) in exact integers
    k = int(math.sqrt(n / d))
    while k > 1 and (k - 1) * (k - 1) * d >= n:
        k -= 1
    while k * k * d < n:
        k += 1
    return max(k, 1)


@nb.njit(cache=True)
def iteration(rng, n, d, lam_int, p, c, evals, budget):
    """One GA iteration at distance ``d``.

    Returns (new_d, ell, evals, status) with status 0 = completed,
    1 = optimum evaluated, 2 = budget exhausted.
    """
    ell = rng.binomial(n, p) if p < 1.0 else n
    best_h = -1
    for _ in range(lam_int):
        if evals >= budget:
            return d, ell, evals, 2
        h = hypergeom(rng, n, d, ell)
        evals += 1
        if h == d and ell == d:
            return 0, ell, evals, 1
        if h > best_h:
            best_h = h
    good = best_h
    bad = ell - best_h
    best_gain = -n - 1  # best fitness change among offspring different from x
    for _ in range(lam_int):
        if evals >= budget:
            return d, ell, evals, 2
        a = rng.binomial(good, c) if good > 0 else 0
        b = rng.binomial(bad, c) if bad > 0 else 0
        evals += 1
        if a + b == 0:
            continue
        gain = a - b
        if gain == d:
            return 0, ell, evals, 1
        if gain > best_gain:
            best_gain = gain
    # a non-parent offspring is selected only if it attains the overall
    # maximum, which includes parent copies at gain 0; elitism then accepts
    # it iff gain >= 0
    if best_gain >= 0:
        return d - best_gain, ell, evals, 0
    return d, ell, evals, 0


@nb.njit(cache=True)
def _run_ga(rng, n, mode, lam0, F, r, budget, rounded_rates, record):
    d = rng.binomial(n, 0.5)
    evals = 1
    cap = 16 if not record else 1024
    trace = np.empty((cap, 7))
    iters = 0
    cap_iters = 0
    lam = lam0
    if mode == 1 and d > 0:
        lam = float(ceil_sqrt_ratio(n, d))
    grow = F ** (1.0 / (r - 1.0))
    status = 0
    while d > 0 and evals < budget:
        lam_int = round_half_up(lam)
        if lam >= n:
            cap_iters += 1
        rate_lam = float(lam_int) if rounded_rates else lam
        p = rate_lam / n
        if p > 1.0:
            p = 1.0
        c = 1.0 / rate_lam
        d_before = d
        d, ell, evals, status = iteration(rng, n, d, lam_int, p, c, evals, budget)
        iters += 1
        success = d < d_before
        if record:
            if iters > trace.shape[0]:
                bigger = np.empty((2 * trace.shape[0], 7))
                bigger[: trace.shape[0]] = trace
                trace = bigger
            row = trace[iters - 1]
            row[_T_LAM] = lam
            row[_T_LAMINT] = lam_int
            row[_T_ELL] = ell
            row[_T_FB] = n - d_before
            row[_T_FA] = n - d
            row[_T_SUCC] = 1.0 if success else 0.0
            row[_T_EVALS] = evals
        if status != 0:
            break
        if mode == 2:
            if success:
                lam = lam / F
                if lam < 1.0:
                    lam = 1.0
            else:
                lam = lam * grow
                if lam > n:
                    lam = float(n)
        elif mode == 1 and success and d > 0:
            lam = float(ceil_sqrt_ratio(n, d))
    return evals, iters, d == 0, n - d, cap_iters, trace[: iters if record else 0]


@nb.njit(cache=True)
def _run_baseline(rng, n, kind, budget, record):
    d = rng.binomial(n, 0.5)
    evals = 1
    iters = 0
    cap = 16 if not record else 1024
    trace = np.empty((cap, 7))
    q = 1.0 / n
    while d > 0 and evals < budget:
        d_before = d
        if kind == 0:
            k = 1
            if rng.random() * n < d:
                d -= 1
        else:
            k = rng.binomial(n, q)
            h = hypergeom(rng, n, d, k)
            new_d = d + k - 2 * h
            if new_d <= d:
                d = new_d
        evals += 1
        iters += 1
        if record:
            if iters > trace.shape[0]:
                bigger = np.empty((2 * trace.shape[0], 7))
                bigger[: trace.shape[0]] = trace
                trace = bigger
            row = trace[iters - 1]
            row[_T_LAM] = 1.0
            row[_T_LAMINT] = 1.0
            row[_T_ELL] = k
            row[_T_FB] = n - d_before
            row[_T_FA] = n - d
            row[_T_SUCC] = 1.0 if d < d_before else 0.0
            row[_T_EVALS] = evals
    return evals, iters, d == 0, n - d, trace[: iters if record else 0]


def _records(trace: np.ndarray) -> list[IterationRecord]:
    return [
        IterationRecord(i + 1, float(row[0]), int(row[1]), int(row[2]), int(row[3]),
                        int(row[4]), bool(row[5]), int(row[6]))
        for i, row in enumerate(trace)
    ]


def simulate_ga(
    n: int,
    mode: str = SELF_ADJUSTING,
    lam: float = 1.0,
    F: float = 1.5,
    r: float = 5.0,
    budget: int | None = None,
    seed=None,
    rates: str = "real",
    record_trace: bool = False,
) -> RunResult:
    """Simulate one GA run on OneMax of size ``n``.

    ``mode`` is one of "static", "fitness-dependent", "self-adjusting";
    ``lam`` is the static population size or the initial one for the
    self-adjusting rule (ignored by the fitness-dependent rule).
    """
    if mode not in _MODES:
        raise ValueError(f"unknown mode {mode!r}")
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    if not 1 <= lam <= n:
        raise ValueError(f"lambda must lie in [1, n], got {lam}")
    if mode == SELF_ADJUSTING and not (F > 1 and r >= 2):
        raise ValueError(f"need F > 1 and r >= 2, got F={F}, r={r}")
    budget = DEFAULT_BUDGET_FACTOR * n if budget is None else int(budget)
    rng = np.random.default_rng(seed)
    evals, iters, found, final, cap_iters, trace = _run_ga(
        rng, n, _MODES[mode], float(lam), float(F), float(r), budget,
        rates == "rounded", record_trace,
    )
    return RunResult(int(evals), int(iters), bool(found), _records(trace) if record_trace else [],
                     seed if isinstance(seed, int) else None, int(final), int(cap_iters))


def simulate_baseline(kind: str, n: int, budget: int | None = None, seed=None,
                      record_trace: bool = False) -> RunResult:
    """Simulate RLS or the (1+1) EA with standard bit mutation rate 1/n."""
    codes = {RLS: 0, ONE_PLUS_ONE_EA: 1}
    if kind not in codes:
        raise ValueError(f"unknown baseline {kind!r}")
    budget = DEFAULT_BUDGET_FACTOR * n if budget is None else int(budget)
    rng = np.random.default_rng(seed)
    evals, iters, found, final, trace = _run_baseline(rng, n, codes[kind], budget, record_trace)
    return RunResult(int(evals), int(iters), bool(found), _records(trace) if record_trace else [],
                     seed if isinstance(seed, int) else None, int(final))


@nb.njit(cache=True)
def _iteration_successes(rng, n, d, lam, samples):
    lam_int = round_half_up(lam)
    p = min(lam / n, 1.0)
    c = 1.0 / lam
    wins = 0
    for _ in range(samples):
        new_d, _ell, _evals, _status = iteration(rng, n, d, lam_int, p, c, 0, 1 << 62)
        if new_d < d:
            wins += 1
    return wins


def count_iteration_successes(n: int, d: int, lam: float, samples: int,
                              rng: np.random.Generator) -> int:
    """Number of strict improvements in ``samples`` independent iterations from distance d."""
    return int(_iteration_successes(rng, n, d, float(lam), samples))

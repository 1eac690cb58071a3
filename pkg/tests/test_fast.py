"""The distance-level simulator against exact distributions and the bitstring engine."""

import math

import numba as nb
import numpy as np
import pytest

from ollga import (
    FitnessDependentLambda,
    GaParams,
    OneMaxInstance,
    SelfAdjustingLambda,
    StaticLambda,
    ga_iteration,
    run_baseline,
    run_ga,
    simulate_baseline,
    simulate_ga,
)
from ollga.fast import ceil_sqrt_ratio, count_iteration_successes, hypergeom
from ollga.control import lambda_star


@nb.njit
def _draw_many(rng, total, good, draws, k):
    out = np.empty(k, dtype=np.int64)
    for i in range(k):
        out[i] = hypergeom(rng, total, good, draws)
    return out


@pytest.mark.parametrize("total, good, draws", [
    (20, 5, 3), (20, 15, 3), (20, 5, 17), (20, 15, 17), (30, 10, 10), (50, 1, 25), (40, 40, 7),
])
def test_hypergeometric_matches_exact_pmf(total, good, draws):
    k = 100_000
    sample = _draw_many(np.random.default_rng(total + good + draws), total, good, draws, k)
    support = range(max(0, draws - (total - good)), min(draws, good) + 1)
    for v in support:
        prob = math.comb(good, v) * math.comb(total - good, draws - v) / math.comb(total, draws)
        freq = np.mean(sample == v)
        assert abs(freq - prob) <= 5 * math.sqrt(prob * (1 - prob) / k) + 1e-12
    assert sample.min() >= support.start and sample.max() < support.stop


def test_ceil_sqrt_ratio_matches_lambda_star():
    for n in (1, 2, 10, 99, 100, 1000, 4096):
        for d in range(1, n + 1, max(1, n // 97)):
            assert ceil_sqrt_ratio(n, d) == lambda_star(n, n - d)


def test_deterministic_given_seed():
    a = simulate_ga(300, seed=42, record_trace=True)
    b = simulate_ga(300, seed=42, record_trace=True)
    assert a.trace == b.trace and a.total_evals == b.total_evals


def test_trace_invariants():
    n, F = 500, 1.5
    res = simulate_ga(n, F=F, seed=3, record_trace=True)
    assert res.found_optimum and res.trace[-1].fitness_after == n
    prev = 1
    for a, b in zip(res.trace, res.trace[1:]):
        assert a.fitness_after >= a.fitness_before
        assert a.evals_cum - prev == 2 * a.lambda_int
        prev = a.evals_cum
        expected = max(a.lambda_real / F, 1) if a.success else min(a.lambda_real * F**0.25, n)
        assert b.lambda_real == pytest.approx(expected, rel=1e-12)
        assert 1 <= b.lambda_real <= n


def test_budget_is_respected():
    res = simulate_ga(1000, "static", 50, budget=777, seed=0)
    assert res.total_evals == 777 and not res.found_optimum
    res = simulate_baseline("one-plus-one-ea", 1000, budget=99, seed=0)
    assert res.total_evals == 99 and not res.found_optimum


@pytest.mark.parametrize("kwargs", [dict(mode="x"), dict(lam=0.5), dict(lam=11.0), dict(F=1.0)])
def test_rejects_bad_arguments(kwargs):
    with pytest.raises(ValueError):
        simulate_ga(10, **kwargs)


def _welch_z(a, b):
    a, b = np.asarray(a, float), np.asarray(b, float)
    return (a.mean() - b.mean()) / math.sqrt(a.var(ddof=1) / len(a) + b.var(ddof=1) / len(b))


@pytest.mark.parametrize("label, reference, fast", [
    ("self-adjusting", lambda s: run_ga(GaParams(40, seed=s)),
     lambda s: simulate_ga(40, seed=s)),
    ("self-adjusting F=3", lambda s: run_ga(GaParams(40, F=3.0, seed=s)),
     lambda s: simulate_ga(40, F=3.0, seed=s)),
    ("static 3", lambda s: run_ga(GaParams(40, seed=s), StaticLambda(3.0)),
     lambda s: simulate_ga(40, "static", 3.0, seed=s)),
    ("static 2.6", lambda s: run_ga(GaParams(40, seed=s), StaticLambda(2.6)),
     lambda s: simulate_ga(40, "static", 2.6, seed=s)),
    ("fitness-dependent", lambda s: run_ga(GaParams(40, seed=s), FitnessDependentLambda()),
     lambda s: simulate_ga(40, "fitness-dependent", seed=s)),
    ("ea", lambda s: run_baseline("one-plus-one-ea", 40, seed=s),
     lambda s: simulate_baseline("one-plus-one-ea", 40, seed=s)),
])
def test_runtime_distribution_matches_bitstring_engine(label, reference, fast):
    ref = [reference(s).total_evals for s in range(250)]
    sim = [fast(10_000 + s).total_evals for s in range(4000)]
    assert abs(_welch_z(ref, sim)) < 4, label
    # medians as a robustness companion
    assert abs(np.median(ref) / np.median(sim) - 1) < 0.15, label


@pytest.mark.parametrize("n, d, lam", [(30, 5, 4.0), (30, 1, 2.6), (25, 20, 1.0), (20, 3, 20.0)])
def test_iteration_success_matches_bitstring_engine(n, d, lam):
    g = np.random.default_rng(n * d)
    trials = 4000
    target = np.ones(n, dtype=np.uint8)
    wins = 0
    from ollga import BitString
    z = BitString.from_bits(target)
    x = z.flip(range(d))
    lam_int = int(math.floor(lam + 0.5))
    for _ in range(trials):
        out = ga_iteration(x, n - d, OneMaxInstance(z), lam_int, min(lam / n, 1), 1 / lam, g)
        wins += out.fitness > n - d
    q_ref = wins / trials
    q_fast = count_iteration_successes(n, d, lam, 200_000, g) / 200_000
    se = math.sqrt(q_fast * (1 - q_fast) / trials + 1e-12)
    assert abs(q_ref - q_fast) <= 4 * se + 1e-3

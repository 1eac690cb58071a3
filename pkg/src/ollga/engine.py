"""Reference (1+(lambda,lambda)) GA on explicit bit strings.

This engine follows the algorithm line by line: every offspring is a real
bit string, every query goes through :class:`OneMaxInstance`, ties are
broken uniformly at random and crossover offspring equal to the parent are
disregarded.  It accepts any fitness transform, which is what the
comparison-invariance tests rely on.  Large scaling studies use the
distance-level simulator in :mod:`ollga.fast` instead.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .bitstring import BitString, OneMaxInstance, random_bitstring
from .control import LambdaController, SelfAdjustingLambda, round_lambda
from .variation import crossover, mutate, sample_binomial

DEFAULT_BUDGET_FACTOR = 10_000

OK = "ok"
OPTIMUM = "optimum"
BUDGET = "budget"


@dataclass
class GaParams:
    n: int
    F: float = 1.5
    r: float = 5.0
    lambda0: float = 1.0
    budget: int | None = None
    seed: int | None = None
    # "real": p = lambda/n and c = 1/lambda with the unrounded lambda
    # "rounded": both rates use the rounded offspring count
    rates: str = "real"

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"n must be positive, got {self.n}")
        if not self.F > 1:
            raise ValueError(f"F must exceed 1, got {self.F}")
        if not self.r >= 2:
            raise ValueError(f"r must be at least 2, got {self.r}")
        if not 1 <= self.lambda0 <= self.n:
            raise ValueError(f"lambda0 must lie in [1, n], got {self.lambda0}")
        if self.budget is None:
            self.budget = DEFAULT_BUDGET_FACTOR * self.n
        if self.budget < 1:
            raise ValueError(f"budget must be positive, got {self.budget}")
        if self.rates not in ("real", "rounded"):
            raise ValueError(f"rates must be 'real' or 'rounded', got {self.rates!r}")

    def rates_for(self, lambda_real: float) -> tuple[float, float]:
        lam = float(round_lambda(lambda_real)) if self.rates == "rounded" else lambda_real
        return min(lam / self.n, 1.0), 1.0 / lam


class IterationRecord(NamedTuple):
    iter: int
    lambda_real: float
    lambda_int: int
    ell: int
    fitness_before: float
    fitness_after: float
    success: bool
    evals_cum: int


TRACE_COLUMNS = IterationRecord._fields


@dataclass
class RunResult:
    total_evals: int
    total_iters: int
    found_optimum: bool
    trace: list[IterationRecord] = field(default_factory=list)
    seed: int | None = None
    final_fitness: float | None = None
    cap_iters: int = 0

    @property
    def cap_fraction(self) -> float:
        """Fraction of iterations run with lambda at its upper barrier n."""
        return self.cap_iters / self.total_iters if self.total_iters else 0.0


@dataclass
class IterationOutcome:
    x: BitString
    fitness: float
    success: bool
    moved: bool
    ell: int
    status: str = OK


class _BestOf:
    """Running argmax with uniform tie-breaking (reservoir sampling)."""

    def __init__(self, rng):
        self.rng = rng
        self.value = None
        self.item = None
        self.ties = 0

    def offer(self, value, item) -> None:
        if self.value is None or value > self.value:
            self.value, self.item, self.ties = value, item, 1
        elif value == self.value:
            self.ties += 1
            if self.rng.integers(self.ties) == 0:
                self.item = item


def ga_iteration(
    x: BitString,
    fx,
    inst: OneMaxInstance,
    lambda_int: int,
    p: float,
    c: float,
    rng: np.random.Generator,
    budget: int | None = None,
) -> IterationOutcome:
    """One mutation phase, crossover phase and elitist selection step.

    Stops early as soon as the optimum is evaluated or the evaluation budget
    is used up; ``status`` then reports which of the two happened.
    """
    n = x.n
    if not 1 <= lambda_int <= n:
        raise ValueError(f"offspring count must lie in [1, {n}], got {lambda_int}")
    budget = np.inf if budget is None else budget

    ell = sample_binomial(n, p, rng)

    best_mutant = _BestOf(rng)
    for _ in range(lambda_int):
        if inst.eval_count >= budget:
            return IterationOutcome(x, fx, False, False, ell, BUDGET)
        xi = mutate(x, ell, rng)
        fi = inst.evaluate(xi)
        if inst.last_was_optimal:
            return IterationOutcome(xi, fi, fi > fx, True, ell, OPTIMUM)
        best_mutant.offer(fi, xi)
    xprime = best_mutant.item

    best_any = None
    best_new = _BestOf(rng)  # offspring different from x
    for _ in range(lambda_int):
        if inst.eval_count >= budget:
            return IterationOutcome(x, fx, False, False, ell, BUDGET)
        yi = crossover(x, xprime, c, rng)
        fi = inst.evaluate(yi)
        if inst.last_was_optimal:
            return IterationOutcome(yi, fi, fi > fx, True, ell, OPTIMUM)
        if best_any is None or fi > best_any:
            best_any = fi
        if yi != x:
            best_new.offer(fi, yi)

    if best_new.item is not None and best_new.value == best_any:
        y, fy = best_new.item, best_new.value
    else:
        y, fy = x, fx

    if fy >= fx:
        return IterationOutcome(y, fy, fy > fx, y is not x, ell)
    return IterationOutcome(x, fx, False, False, ell)


def run_ga(
    params: GaParams,
    controller: LambdaController | None = None,
    instance: OneMaxInstance | None = None,
    rng: np.random.Generator | None = None,
    record_trace: bool = True,
    on_iteration=None,
) -> RunResult:
    """Run the GA until the optimum is evaluated or the budget is spent.

    Without a controller the self-adjusting one-fifth rule is used with the
    parameters' F, r and lambda0.  Without an instance a target is drawn
    from ``rng`` (seeded by ``params.seed``).  ``on_iteration(x, record)``
    is called after every iteration with the incumbent.
    """
    if rng is None:
        rng = np.random.default_rng(params.seed)
    if controller is None:
        controller = SelfAdjustingLambda(F=params.F, r=params.r, lambda_real=params.lambda0)
    if instance is None:
        instance = OneMaxInstance.random(params.n, rng)
    if instance.n != params.n:
        raise ValueError(f"instance has n={instance.n}, params have n={params.n}")
    n = params.n

    x = random_bitstring(n, rng)
    fx = instance.evaluate(x)
    controller.start(n, fx)
    trace: list[IterationRecord] = []
    iters = cap_iters = 0

    while not instance.solved and instance.eval_count < params.budget:
        lam = controller.lambda_real
        lam_int = round_lambda(lam)
        if lam >= n:
            cap_iters += 1
        p, c = params.rates_for(lam)
        before = fx
        out = ga_iteration(x, fx, instance, lam_int, p, c, rng, params.budget)
        iters += 1
        x, fx = out.x, out.fitness
        rec = IterationRecord(iters, lam, lam_int, out.ell, before, fx, out.success,
                              instance.eval_count)
        if record_trace:
            trace.append(rec)
        if on_iteration is not None:
            on_iteration(x, rec)
        if out.status != OK:
            break
        controller.update(out.success, fx)

    return RunResult(
        total_evals=instance.eval_count,
        total_iters=iters,
        found_optimum=instance.solved,
        trace=trace,
        seed=params.seed,
        final_fitness=fx,
        cap_iters=cap_iters,
    )


ONE_PLUS_ONE_EA = "one-plus-one-ea"
RLS = "rls"


def run_baseline(
    kind: str,
    n: int,
    budget: int | None = None,
    seed: int | None = None,
    instance: OneMaxInstance | None = None,
    record_trace: bool = False,
) -> RunResult:
    """Elitist (1+1) EA (rate 1/n) or RLS (one uniform bit) on OneMax."""
    if kind not in (ONE_PLUS_ONE_EA, RLS):
        raise ValueError(f"unknown baseline {kind!r}")
    budget = DEFAULT_BUDGET_FACTOR * n if budget is None else budget
    if budget < 1:
        raise ValueError(f"budget must be positive, got {budget}")
    rng = np.random.default_rng(seed)
    if instance is None:
        instance = OneMaxInstance.random(n, rng)

    x = random_bitstring(n, rng)
    fx = instance.evaluate(x)
    trace = []
    iters = 0
    while not instance.solved and instance.eval_count < budget:
        if kind == RLS:
            y = x.flip([rng.integers(n)])
            ell = 1
        else:
            ell = sample_binomial(n, 1.0 / n, rng)
            y = mutate(x, ell, rng)
        fy = instance.evaluate(y)
        iters += 1
        before = fx
        if fy >= fx:
            x, fx = y, fy
        if record_trace:
            trace.append(IterationRecord(iters, 1.0, 1, ell, before, fx, fx > before,
                                         instance.eval_count))
    return RunResult(instance.eval_count, iters, instance.solved, trace, seed, fx)

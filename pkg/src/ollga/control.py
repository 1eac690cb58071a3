"""Population-size control: static, fitness-dependent and success-based."""

from __future__ import annotations

import math
from dataclasses import dataclass

STATIC = "static"
FITNESS_DEPENDENT = "fitness-dependent"
SELF_ADJUSTING = "self-adjusting"


def round_lambda(lambda_real: float) -> int:
    """Round to the closest integer, halves rounding up."""
    if lambda_real < 1:
        raise ValueError(f"lambda must be at least 1, got {lambda_real}")
    base = math.floor(lambda_real)
    return base + 1 if lambda_real - base >= 0.5 else base


def lambda_star(n: int, fitness: int) -> int:
    """Fitness-dependent population size ceil(sqrt(n / (n - f)))."""
    if not 0 <= fitness < n:
        raise ValueError(f"fitness must lie in [0, {n}), got {fitness}")
    d = n - fitness
    # integer ceil(sqrt(n/d)): smallest k with k*k*d >= n
    k = math.isqrt(n // d)
    while k * k * d < n:
        k += 1
    return max(k, 1)


@dataclass
class StaticLambda:
    lambda_real: float

    kind = STATIC

    def __post_init__(self):
        if self.lambda_real < 1:
            raise ValueError(f"lambda must be at least 1, got {self.lambda_real}")

    def start(self, n: int, fitness) -> None:
        if self.lambda_real > n:
            raise ValueError(f"lambda={self.lambda_real} exceeds n={n}")

    def update(self, success: bool, fitness) -> None:
        pass


@dataclass
class FitnessDependentLambda:
    """lambda = ceil(sqrt(n / (n - f(x)))), recomputed whenever the fitness changes."""

    lambda_real: float = 1.0
    n: int = 0

    kind = FITNESS_DEPENDENT

    def start(self, n: int, fitness) -> None:
        self.n = n
        if fitness < n:
            self.lambda_real = float(lambda_star(n, int(fitness)))

    def update(self, success: bool, fitness) -> None:
        if fitness < self.n:
            self.lambda_real = float(lambda_star(self.n, int(fitness)))


@dataclass
class SelfAdjustingLambda:
    """Success-based control: divide by F on success, multiply by F**(1/(r-1)) otherwise.

    With r=5 this is the one-fifth success rule.  lambda is kept in [1, n].
    """

    F: float = 1.5
    r: float = 5.0
    lambda_real: float = 1.0
    n: int = 0

    kind = SELF_ADJUSTING

    def __post_init__(self):
        if not self.F > 1:
            raise ValueError(f"update strength F must exceed 1, got {self.F}")
        if not self.r >= 2:
            raise ValueError(f"success-rule denominator r must be at least 2, got {self.r}")
        if self.lambda_real < 1:
            raise ValueError(f"lambda must be at least 1, got {self.lambda_real}")

    def start(self, n: int, fitness) -> None:
        if self.lambda_real > n:
            raise ValueError(f"lambda={self.lambda_real} exceeds n={n}")
        self.n = n

    def update(self, success: bool, fitness=None) -> None:
        self.lambda_real = update_lambda_self_adjusting(
            self.lambda_real, success, self.F, self.r, self.n
        )


def update_lambda_self_adjusting(lambda_real: float, success: bool, F: float, r: float, n: float) -> float:
    if success:
        return max(lambda_real / F, 1.0)
    return min(lambda_real * F ** (1.0 / (r - 1.0)), float(n))


LambdaController = StaticLambda | FitnessDependentLambda | SelfAdjustingLambda

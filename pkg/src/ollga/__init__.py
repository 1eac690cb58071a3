"""The (1+(lambda,lambda)) genetic algorithm on OneMax with static,
fitness-dependent and self-adjusting population sizes."""

from .bitstring import BitString, DimensionError, OneMaxInstance, evaluate, random_bitstring
from .control import (
    FitnessDependentLambda,
    SelfAdjustingLambda,
    StaticLambda,
    lambda_star,
    round_lambda,
    update_lambda_self_adjusting,
)
from .engine import (
    GaParams,
    IterationOutcome,
    IterationRecord,
    RunResult,
    ga_iteration,
    run_baseline,
    run_ga,
)
from .fast import simulate_baseline, simulate_ga
from .variation import crossover, mutate, sample_binomial

__version__ = "0.1.0"

"""Variation operators of the (1+(lambda,lambda)) GA."""

import numpy as np

from .bitstring import BitString, _check_same_length, _pack


def sample_binomial(n: int, p: float, rng: np.random.Generator) -> int:
    """Draw a step size from Binomial(n, p)."""
    if n < 1:
        raise ValueError(f"number of trials must be positive, got {n}")
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"probability must lie in [0, 1], got {p}")
    return int(rng.binomial(n, p))


def mutate(x: BitString, ell: int, rng: np.random.Generator) -> BitString:
    """Flip exactly ``ell`` distinct, uniformly chosen positions of ``x``."""
    if not 0 <= ell <= x.n:
        raise ValueError(f"step size must lie in [0, {x.n}], got {ell}")
    if ell == 0:
        return x
    if ell == x.n:
        return x.complement()
    return x.flip(rng.choice(x.n, size=ell, replace=False))


def crossover(x: BitString, xprime: BitString, c: float, rng: np.random.Generator) -> BitString:
    """Biased uniform crossover: each bit comes from ``xprime`` with probability ``c``."""
    _check_same_length(x, xprime)
    if not 0.0 <= c <= 1.0:
        raise ValueError(f"crossover probability must lie in [0, 1], got {c}")
    take = _pack(rng.random(x.n) < c)
    return BitString(x.words ^ ((x.words ^ xprime.words) & take), x.n)

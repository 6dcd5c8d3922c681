"""Base-2 logarithmic combinatorics built on ``math.lgamma``."""

from __future__ import annotations

import math
from functools import lru_cache

LN2 = math.log(2.0)
CLAMP_EPS = 1e-9


def clamp_cost(bits: float) -> float:
    """Snap rounding residue within ``CLAMP_EPS`` of zero to exactly zero."""
    if abs(bits) < CLAMP_EPS:
        return 0.0
    return bits


def log_binomial(x: float, y: float) -> float:
    """log2 of Gamma(x+1) / (Gamma(y+1) Gamma(x-y+1)) for real arguments."""
    if x + 1 <= 0 or y + 1 <= 0 or x - y + 1 <= 0:
        raise ValueError(f"binomial out of domain: ({x}, {y})")
    if y == 0 or y == x:
        return 0.0
    return (math.lgamma(x + 1) - math.lgamma(y + 1) - math.lgamma(x - y + 1)) / LN2


def ln_dm_binomial(count: int, alpha: float) -> float:
    # ln C(count + alpha - 1, alpha - 1) without evaluating Gamma(alpha - 1 + 1)
    # at a shifted argument; valid for any alpha > 0.
    if count == 0:
        return 0.0
    return math.lgamma(count + alpha) - math.lgamma(alpha) - math.lgamma(count + 1)


def dm_log_binomial(count: int, alpha: float) -> float:
    """log2 C(count + alpha - 1, alpha - 1), the per-entry Dirichlet-multinomial weight."""
    if alpha <= 0:
        raise ValueError("alpha must be positive; use the analytic zero limit")
    if count < 0:
        raise ValueError("count must be nonnegative")
    return ln_dm_binomial(count, alpha) / LN2


@lru_cache(maxsize=257)
def _small_log_factorial(k: int) -> float:
    return math.lgamma(k + 1) / LN2


def log_factorial(k: int) -> float:
    """log2 k!"""
    if k < 0:
        raise ValueError("factorial of a negative number")
    if k <= 256:
        return _small_log_factorial(k)
    return math.lgamma(k + 1) / LN2


def log_multinomial(total: int, parts) -> float:
    """log2 of total! / prod(parts!)."""
    return log_factorial(total) - sum(log_factorial(p) for p in parts)

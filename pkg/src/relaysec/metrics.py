"""Estimator intervals and load-balance metrics."""

from __future__ import annotations

import math
from statistics import NormalDist

import numpy as np

from .params import ParameterError


def wilson_interval(successes: int, trials: int, confidence: float = 0.95) -> tuple[float, float]:
    """Wilson score interval for a binomial proportion."""
    if trials < 1:
        raise ParameterError("trials", "must be >= 1")
    if not 0 <= successes <= trials:
        raise ParameterError("successes", "must lie in [0, trials]")
    if not 0 < confidence < 1:
        raise ParameterError("confidence", "must lie in (0, 1)")
    z = NormalDist().inv_cdf(0.5 + confidence / 2)
    p = successes / trials
    z2n = z * z / trials
    centre = (p + z2n / 2) / (1 + z2n)
    half = z * math.sqrt(p * (1 - p) / trials + z2n / (4 * trials)) / (1 + z2n)
    lo = 0.0 if successes == 0 else max(0.0, centre - half)
    hi = 1.0 if successes == trials else min(1.0, centre + half)
    return lo, hi


def jain_fairness(counts) -> float:
    """Jain's index ``(sum x)^2 / (n * sum x^2)``; 1 is perfectly balanced."""
    x = np.asarray(counts, dtype=float)
    if x.ndim != 1 or x.size == 0:
        raise ParameterError("counts", "must be a non-empty vector")
    if np.any(x < 0):
        raise ParameterError("counts", "must be non-negative")
    sq = float(np.dot(x, x))
    if sq == 0:
        raise ParameterError("counts", "needs at least one positive entry")
    return float(x.sum()) ** 2 / (x.size * sq)

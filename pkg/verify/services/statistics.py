"""
Test statistics used by the verification checks.
"""
import math
from fractions import Fraction
from itertools import permutations
from typing import Callable, Optional, Tuple

import numpy as np
from scipy import stats

from levy_models.exceptions import DomainError

MIN_KS_SAMPLES = 30


def ks_two_sample(a, b) -> Tuple[float, float]:
    """Two-sample Kolmogorov-Smirnov statistic and p-value."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.size < MIN_KS_SAMPLES or b.size < MIN_KS_SAMPLES:
        raise DomainError(f"KS needs at least {MIN_KS_SAMPLES} samples per side, got {a.size} and {b.size}")
    result = stats.ks_2samp(a, b)
    return float(result.statistic), float(result.pvalue)


def ks_one_sample(samples, cdf: Callable) -> Tuple[float, float]:
    """One-sample Kolmogorov-Smirnov statistic and p-value against ``cdf``."""
    samples = np.asarray(samples, dtype=float)
    if samples.size < MIN_KS_SAMPLES:
        raise DomainError(f"KS needs at least {MIN_KS_SAMPLES} samples, got {samples.size}")
    result = stats.kstest(samples, cdf)
    return float(result.statistic), float(result.pvalue)


def randomized_pit(counts, distribution, uniforms) -> np.ndarray:
    """F(k - 1) + U P(k) for integer samples k of a frozen discrete ``distribution``; exactly uniform under it."""
    counts = np.asarray(counts, dtype=float)
    return distribution.cdf(counts - 1.0) + np.asarray(uniforms) * distribution.pmf(counts)


def uniform_cdf(x):
    return np.clip(x, 0.0, 1.0)


def arcsine_cdf(x):
    return 2.0 / math.pi * np.arcsin(np.sqrt(np.clip(x, 0.0, 1.0)))


def mean_z(samples, expected: float, variance: Optional[float] = None) -> float:
    """z-score of the sample mean; ``variance`` defaults to the sample variance."""
    samples = np.asarray(samples, dtype=float)
    variance = float(np.var(samples, ddof=1)) if variance is None else variance
    if variance <= 0:
        return 0.0 if math.isclose(samples.mean(), expected, abs_tol=1e-12) else math.inf
    return float((samples.mean() - expected) / math.sqrt(variance / samples.size))


def proportion_z(successes: int, trials: int, probability: float) -> float:
    if trials < 1:
        raise DomainError("A proportion needs at least one trial")
    return (successes / trials - probability) / math.sqrt(probability * (1.0 - probability) / trials)


def correlation_z(x, y) -> Tuple[float, float]:
    """Spearman rank correlation and its z-score sqrt(n) * r under independence."""
    rho = float(stats.spearmanr(x, y).correlation)
    return rho, rho * math.sqrt(len(x))


def chi_square_uniform(counts) -> Tuple[float, float]:
    result = stats.chisquare(np.asarray(counts, dtype=float))
    return float(result.statistic), float(result.pvalue)


def independence_table(x, y, bins: int = 4) -> np.ndarray:
    """Contingency table of x and y binned at their own sample quantiles."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    edges = np.linspace(0.0, 1.0, bins + 1)[1:-1]
    x_bins = np.searchsorted(np.quantile(x, edges), x, side='right')
    y_bins = np.searchsorted(np.quantile(y, edges), y, side='right')
    table = np.zeros((bins, bins))
    np.add.at(table, (x_bins, y_bins), 1)
    return table


def chi_square_independence(x, y, bins: int = 4) -> Tuple[float, float]:
    statistic, p_value, _, _ = stats.chi2_contingency(independence_table(x, y, bins))
    return float(statistic), float(p_value)


def harmonic(n: int) -> float:
    return float(sum(Fraction(1, k) for k in range(1, n + 1)))


def harmonic_variance(n: int) -> float:
    """Variance of the number of cycles of a uniform permutation of n."""
    return sum(1.0 / k - 1.0 / k ** 2 for k in range(1, n + 1))


def mean_cycle_count(n: int) -> Fraction:
    """Exact mean number of cycles over all permutations of n elements."""
    total = 0
    count = 0
    for perm in permutations(range(n)):
        seen = [False] * n
        for start in range(n):
            if not seen[start]:
                total += 1
                k = start
                while not seen[k]:
                    seen[k] = True
                    k = perm[k]
        count += 1
    return Fraction(total, count)

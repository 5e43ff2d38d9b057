"""
Characterizations of the Cauchy process through its convex minorant.
"""
import math
from functools import partial
from typing import Dict, Optional, Sequence

import numpy as np
from scipy import stats

from levy_models.catalog import LevyModel
from levy_models.rng import RngStream
from levy_models.services import marginal_cdf, path_sample
from minorant_core.services import convex_minorant, slope_passage

from .common import uniform_face_worker
from .replicates import run_replicates
from .reports import TestReport, p_part, z_part
from .statistics import (
    chi_square_independence,
    correlation_z,
    ks_one_sample,
    ks_two_sample,
    randomized_pit,
    uniform_cdf,
)


def cauchy_independence_check(model: LevyModel, n_grid: int, reps: int, rng: RngStream,
                              jobs: Optional[int] = None, negative_control: bool = False) -> TestReport:
    """Length and slope of the face holding a uniform time are independent for Cauchy paths."""
    faces = run_replicates(partial(uniform_face_worker, model, n_grid), reps, rng, jobs)
    slopes = faces['increment'] / faces['length']
    rho, z = correlation_z(faces['length'], slopes)
    parts = [
        p_part('chi_square_4x4', *chi_square_independence(faces['length'], slopes)),
        z_part('rank_correlation', z, rho),
    ]
    return TestReport.from_parts(
        'cauchy_independence_negative' if negative_control else 'cauchy_independence',
        parts, rng, reps, n_grid=n_grid, notes=model.label, negative_control=negative_control,
    )


def _passage_worker(n: int, x_values: Sequence[float], rng: RngStream, count: int) -> Dict[str, np.ndarray]:
    """Grid index of the first face with slope above each x."""
    model = LevyModel.cauchy()
    out = {f"x{i}": np.empty(count) for i in range(len(x_values))}
    for k in range(count):
        dec = convex_minorant(path_sample(model, 1.0, n, rng))
        for i, x in enumerate(x_values):
            out[f"x{i}"][k] = np.rint(slope_passage(dec, x) * n)
    return out


def _gamma_ratio_worker(n: int, x_values: Sequence[float], rng: RngStream, count: int) -> Dict[str, np.ndarray]:
    """Binomial(n, T_F / T_1) counts, the grid law of the passage index."""
    out = {}
    for i, x in enumerate(x_values):
        f = marginal_cdf(LevyModel.cauchy(), 1.0, x)
        head, tail = rng.gamma(f, count), rng.gamma(1.0 - f, count)
        out[f"x{i}"] = rng.binomial(n, head / (head + tail)).astype(float)
    return out


def cauchy_gamma_check(n_grid: int, reps: int, rng: RngStream, x_values: Sequence[float] = (-1.0, 0.0, 1.0),
                       jobs: Optional[int] = None) -> TestReport:
    """
    First time I_x the minorant slope exceeds x, against T_F(x) / T_1 for a
    Gamma subordinator T with F the Cauchy distribution function.

    On a grid of n steps n I_x is BetaBinomial(n, F, 1 - F), so the
    reference is Binomial(n, T_F / T_1) and both sides are compared as
    step counts.
    """
    x_values = tuple(x_values)
    passages = run_replicates(partial(_passage_worker, n_grid, x_values), reps, rng.child(0), jobs)
    ratios = run_replicates(partial(_gamma_ratio_worker, n_grid, x_values), reps, rng.child(1), jobs)
    jitter = rng.child(2).open_uniform(reps)
    parts = []
    marginal_p = {}
    for i, x in enumerate(x_values):
        parts.append(p_part(f"x={x:g}", *ks_two_sample(passages[f"x{i}"], ratios[f"x{i}"])))
        f = 0.5 + math.atan(x) / math.pi
        _, marginal_p[f"x={x:g}"] = ks_one_sample(
            randomized_pit(passages[f"x{i}"], stats.betabinom(n_grid, f, 1.0 - f), jitter), uniform_cdf,
        )
    return TestReport.from_parts(
        'cauchy_gamma', parts, rng, reps, n_grid=n_grid, notes='Cauchy slope passage steps',
        details={'beta_binomial_marginal_p': marginal_p},
    )

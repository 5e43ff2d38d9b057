"""
Point-process and fluctuation-theory checks.
"""
import logging
import math
from functools import partial
from itertools import combinations
from typing import Dict, Optional, Sequence, Tuple

import numpy as np

from levy_models.catalog import LevyModel
from levy_models.exceptions import UnsupportedError
from levy_models.rng import RngStream
from levy_models.services import sample_walks
from minorant_core.services import convex_minorant
from minorant_core.paths import GridPath
from stick_breaking.services import (
    Weight,
    choose_horizon,
    discrete_intensity,
    infinite_horizon_mass,
    infinite_horizon_points,
    intensity_mass,
    points_to_arrays,
    ppp_exponential_horizon,
    slope_intensity_mass,
)

from .brownian import refined_min_records
from .fluctuation import pecherskii_rogozin_rhs, rogozin_integral
from .replicates import run_replicates
from .reports import Convention, Part, TestReport, z_part
from .statistics import mean_z

logger = logging.getLogger(__name__)

Rectangle = Tuple[Tuple[float, float], Tuple[float, float]]

DISPERSION_TOL = 0.1
QUADRATURE_GAP = 0.05


def _ppp_worker(model: LevyModel, theta: float, rectangles: Sequence[Rectangle], n_sticks: Optional[int],
                rng: RngStream, count: int) -> Dict[str, np.ndarray]:
    counts = np.zeros((len(rectangles), count))
    for k in range(count):
        _, points = ppp_exponential_horizon(model, theta, n_sticks, rng)
        lengths, increments = points_to_arrays(points)
        for r, ((t1, t2), (x1, x2)) in enumerate(rectangles):
            inside = (lengths >= t1) & (lengths < t2) & (increments >= x1) & (increments < x2)
            counts[r, k] = inside.sum()
    return {f"r{r}": counts[r] for r in range(len(rectangles))}


def poisson_ppp_check(model: LevyModel, theta: float, rectangles: Sequence[Rectangle], reps: int, rng: RngStream,
                      jobs: Optional[int] = None, n_sticks: Optional[int] = None) -> TestReport:
    """
    Face counts in rectangles of (length, increment) space, for an
    exponential horizon, are Poisson with mean given by the intensity
    and uncorrelated across disjoint rectangles.
    """
    rectangles = tuple((tuple(t), tuple(x)) for t, x in rectangles)
    counts = run_replicates(partial(_ppp_worker, model, theta, rectangles, n_sticks), reps, rng, jobs)
    parts = []
    masses = {}
    for r, (t_range, x_range) in enumerate(rectangles):
        sample = counts[f"r{r}"]
        if x_range[1] <= x_range[0] or t_range[1] <= t_range[0]:
            parts.append(Part(f"empty_r{r}", Convention.COUNT, float(sample.sum()), 0.0))
            continue
        mass = intensity_mass(model, t_range, x_range, Weight.EXPONENTIAL, theta=theta)
        masses[f"r{r}"] = mass
        parts.append(z_part(f"mean_r{r}", mean_z(sample, mass, variance=mass), float(sample.mean())))
        dispersion = float(np.var(sample, ddof=1) / sample.mean()) if sample.mean() > 0 else math.inf
        parts.append(Part(f"dispersion_r{r}", Convention.REL, abs(dispersion - 1.0), DISPERSION_TOL, dispersion))
    for i, j in combinations(sorted(masses), 2):
        correlation = float(np.corrcoef(counts[i], counts[j])[0, 1])
        parts.append(z_part(f"correlation_{i}_{j}", correlation * math.sqrt(reps), correlation))
    return TestReport.from_parts(
        'poisson_ppp', parts, rng, reps, notes=f"{model.label}, theta={theta:g}",
        details={'intensity_mass': masses},
    )


def _horizon_worker(model: LevyModel, slope_cap: float, horizon: float, n: int, min_length: float,
                    rng: RngStream, count: int) -> Dict[str, np.ndarray]:
    faces = np.empty(count)
    for k in range(count):
        points = infinite_horizon_points(model, slope_cap, horizon, n, rng)
        faces[k] = sum(1 for point in points if point.length >= min_length)
    return {'faces': faces}


def infinite_horizon_check(model: LevyModel, slope_cap: float, t_min: float, reps: int, rng: RngStream,
                           jobs: Optional[int] = None, n_grid: int = 4096) -> TestReport:
    """
    Number of faces with slope below ``slope_cap`` and length at least
    ``t_min`` on a long horizon against the infinite-horizon intensity.

    The z-score uses the walk intensity on the simulation grid, which is
    exact for the simulated paths; the gap to the continuous mass on
    [t_min, inf) is reported separately.
    """
    horizon = choose_horizon(model, slope_cap, t_min)
    n = max(n_grid, math.ceil(40.0 * horizon / t_min))
    dt = horizon / n
    k_min = math.ceil(t_min / dt - 1e-9)
    worker = partial(_horizon_worker, model, slope_cap, horizon, n, (k_min - 0.5) * dt)
    faces = run_replicates(worker, reps, rng, jobs)['faces']
    expected = discrete_intensity(model, n, dt, (-math.inf, slope_cap), slopes=True, k_min=k_min)
    continuous = infinite_horizon_mass(model, slope_cap, (t_min, math.inf))
    parts = [
        z_part('mean_faces', mean_z(faces, expected), float(faces.mean())),
        Part('quadrature_gap', Convention.REL, abs(expected - continuous) / continuous, QUADRATURE_GAP, expected),
    ]
    return TestReport.from_parts(
        'infinite_horizon', parts, rng, reps, n_grid=n,
        notes=f"{model.label}, slope < {slope_cap:g}, length >= {t_min:g}, horizon {horizon:g}",
        details={'horizon': horizon, 'walk_mass': expected, 'continuous_mass': continuous},
    )


def _slope_count_worker(model: LevyModel, n: int, a: float, b: float, rng: RngStream,
                        count: int) -> Dict[str, np.ndarray]:
    walks = sample_walks(model, 1.0, n, count, rng)
    inside, wider = np.empty(count), np.empty(count)
    for k, row in enumerate(walks):
        slopes = convex_minorant(GridPath(0.0, 1.0 / n, row)).slopes
        inside[k] = np.sum((slopes > a) & (slopes < b))
        wider[k] = np.sum((slopes > a - 1.0) & (slopes < b + 1.0))
    return {'inside': inside, 'wider': wider}


def stable_slope_count_check(alpha: float, a: float, b: float, n_grid: int, reps: int, rng: RngStream,
                             jobs: Optional[int] = None) -> TestReport:
    """Mean number of faces with slope in (a, b) on [0, 1] against its intensity."""
    if alpha != 2:
        raise UnsupportedError(f"Slope counts need a closed-form marginal; alpha={alpha} is not supported")
    model = LevyModel.stable(2.0, 0.0, math.sqrt(0.5))
    samples = run_replicates(partial(_slope_count_worker, model, n_grid, a, b), reps, rng, jobs)
    inside = samples['inside']
    expected = discrete_intensity(model, n_grid, 1.0 / n_grid, (a, b), slopes=True)
    continuous = slope_intensity_mass(model, a, b)
    parts = [
        z_part('mean_faces', mean_z(inside, expected), float(inside.mean())),
        Part('quadrature_gap', Convention.REL, abs(expected - continuous) / continuous, QUADRATURE_GAP, expected),
        Part('wider_interval_smaller', Convention.COUNT, float(np.sum(samples['wider'] < inside)), 0.0),
    ]
    return TestReport.from_parts(
        'stable_slope_count', parts, rng, reps, n_grid=n_grid,
        notes=f"{model.label}, slopes in ({a:g}, {b:g})",
        details={'walk_mass': expected, 'continuous_mass': continuous},
    )


def rogozin_integral_check(reps: int, rng: RngStream, jobs: Optional[int] = None,
                           drifts: Sequence[float] = (1.0, 0.5, 0.25)) -> TestReport:
    """Regularity integral: diverges for Cauchy, vanishes for Gamma, grows as a Brownian drift shrinks."""
    cauchy = rogozin_integral(LevyModel.cauchy())
    gamma = rogozin_integral(LevyModel.gamma())
    brownian = [rogozin_integral(LevyModel.brownian(1.0, drift)) for drift in drifts]
    values = [result.value for result in brownian]
    parts = [
        Part('cauchy_diverges', Convention.COUNT, float(not cauchy.diverges), 0.0),
        Part('gamma_zero', Convention.COUNT, float(gamma.value != 0.0 or gamma.diverges), 0.0),
        Part('brownian_growth', Convention.COUNT, float(np.sum(np.diff(values) <= 0)), 0.0),
    ]
    return TestReport.from_parts(
        'rogozin_integral', parts, rng, 0, notes='truncated at t=1e-8',
        details={
            'cauchy': cauchy.value,
            'gamma': gamma.value,
            'brownian': {f"{drift:g}": result.value for drift, result in zip(drifts, brownian)},
            'brownian_diverges': [result.diverges for result in brownian],
        },
    )


def _minimum_worker(model: LevyModel, theta: float, slope: float, n: int, rng: RngStream,
                    count: int) -> Dict[str, np.ndarray]:
    canonical = model.canonical()
    h = rng.exponential(1.0 / theta, count) / n
    steps = (canonical.drift - slope) * h[:, None] + canonical.sigma * np.sqrt(h)[:, None] * rng.standard_normal((count, n))
    walks = np.hstack((np.zeros((count, 1)), np.cumsum(steps, axis=1)))
    rho, m = refined_min_records(walks, canonical.sigma, h, rng)
    return {'rho': rho, 'm': m}


def pecherskii_rogozin_check(model: LevyModel, theta: float, alpha: float, beta: float, slope: float,
                             n_grid: int, reps: int, rng: RngStream, jobs: Optional[int] = None) -> TestReport:
    """
    E exp(-alpha rho + beta m) for the last minimum time rho and value m of
    X_t - slope t up to an exponential time, against the quadrature formula.
    """
    rhs = pecherskii_rogozin_rhs(model, theta, alpha, beta, slope)
    samples = run_replicates(partial(_minimum_worker, model, theta, slope, n_grid), reps, rng, jobs)
    rho, m = samples['rho'], samples['m']
    values = np.exp(-alpha * rho + beta * m)
    estimate = float(values.mean())
    trivial = float(np.mean(np.exp(-0.0 * rho + 0.0 * m)))
    decreasing = [float(np.mean(np.exp(-a * rho))) for a in (0.5, 1.0, 2.0, 4.0)]
    parts = [
        Part('relative_error', Convention.REL, abs(estimate - rhs) / rhs, 0.02, estimate),
        Part('zero_exponents', Convention.COUNT,
             float(trivial != 1.0 or pecherskii_rogozin_rhs(model, theta, 0.0, 0.0, slope) != 1.0), 0.0),
        Part('monotone_in_alpha', Convention.COUNT, float(np.sum(np.diff(decreasing) >= 0)), 0.0),
    ]
    return TestReport.from_parts(
        'pecherskii_rogozin', parts, rng, reps, n_grid=n_grid,
        notes=f"{model.label}, theta={theta:g}, alpha={alpha:g}, beta={beta:g}, slope={slope:g}",
        details={'estimate': estimate, 'quadrature': rhs, 'z_score': mean_z(values, rhs)},
    )

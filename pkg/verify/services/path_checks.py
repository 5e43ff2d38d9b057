"""
Path-level checks: marginals, face laws, invariance, excursions and the
location of the minimum.
"""
import logging
from functools import partial
from typing import Dict, Optional, Sequence, Union

import numpy as np

from levy_models.catalog import Family, LevyModel
from levy_models.exceptions import UnsupportedError
from levy_models.rng import RngStream
from levy_models.services import marginal_cdf, path_sample, sample_increments, sample_walks
from minorant_core.paths import GridPath
from minorant_core.services import convex_minorant, excursion
from path_transforms.services import invariant_transform, knight_bridge, recursive_face_discovery, vervaat
from stick_breaking.services import default_sticks

from .brownian import refined_min_records
from .common import as_grids, draw_face, uniform_face_worker
from .replicates import run_replicates
from .reports import Convention, Part, TestReport, p_part, z_part
from .statistics import arcsine_cdf, correlation_z, ks_one_sample, ks_two_sample, uniform_cdf

logger = logging.getLogger(__name__)

FUNCTIONALS = ('max', 'mean', 'midpoint')


def _marginal_worker(model: LevyModel, t_values: Sequence[float], rng: RngStream,
                     count: int) -> Dict[str, np.ndarray]:
    return {f"t{i}": sample_increments(model, t, rng, size=count) for i, t in enumerate(t_values)}


def marginal_consistency_check(model: LevyModel, t_values: Sequence[float], reps: int, rng: RngStream,
                               jobs: Optional[int] = None) -> TestReport:
    """Sampled increments against the closed-form marginal CDF at each time."""
    samples = run_replicates(partial(_marginal_worker, model, tuple(t_values)), reps, rng, jobs)
    parts = [
        p_part(f"t={t:g}", *ks_one_sample(samples[f"t{i}"], partial(marginal_cdf, model, t)))
        for i, t in enumerate(t_values)
    ]
    return TestReport.from_parts('marginal_consistency', parts, rng, reps, notes=model.label)


def _self_similarity_index(model: LevyModel) -> float:
    model = model.canonical()
    if model.family == Family.STABLE and (model.alpha != 1 or model.beta == 0):
        return model.alpha
    if model.family == Family.CAUCHY:
        return 1.0
    if model.family == Family.BROWNIAN and model.drift == 0:
        return 2.0
    raise UnsupportedError(f"{model.label} is not strictly self-similar")


def _scaling_worker(model: LevyModel, s: float, t: float, rng: RngStream, count: int) -> Dict[str, np.ndarray]:
    long = sample_increments(model, s * t, rng.child(0), size=count)
    short = sample_increments(model, t, rng.child(1), size=count)
    return {'long': long, 'short': short}


def stable_scaling_check(model: LevyModel, s: float, t: float, reps: int, rng: RngStream,
                         jobs: Optional[int] = None) -> TestReport:
    """X_{st} has the law of s^(1/alpha) X_t."""
    alpha = _self_similarity_index(model)
    samples = run_replicates(partial(_scaling_worker, model, s, t), reps, rng, jobs)
    scaled = s ** (1.0 / alpha) * samples['short']
    parts = [p_part('scaling', *ks_two_sample(samples['long'], scaled))]
    return TestReport.from_parts('stable_scaling', parts, rng, reps,
                                 notes=f"{model.label}, s={s:g}, t={t:g}")


def _first_stick_worker(model: LevyModel, rng: RngStream, count: int) -> Dict[str, np.ndarray]:
    lengths = rng.open_uniform(count)
    return {'length': lengths, 'increment': sample_increments(model, lengths, rng)}


def theorem1_check(model: LevyModel, n_grid: Union[int, Sequence[int]], reps: int, rng: RngStream,
                   jobs: Optional[int] = None) -> TestReport:
    """
    Length and increment of the face holding a uniform time against the
    first stick L_1 ~ U(0, 1) with Y_1 ~ X_{L_1}.
    """
    sticks = run_replicates(partial(_first_stick_worker, model), reps, rng.child(0), jobs)
    parts = []
    negative = int(np.sum(sticks['increment'] < 0)) if model.is_subordinator else 0
    for n in as_grids(n_grid):
        faces = run_replicates(partial(uniform_face_worker, model, n), reps, rng.child(n), jobs)
        parts.append(p_part(f"length_n={n}", *ks_two_sample(faces['length'], sticks['length'])))
        parts.append(p_part(f"increment_n={n}", *ks_two_sample(faces['increment'], sticks['increment'])))
        if model.is_subordinator:
            negative += int(np.sum(faces['increment'] < 0))
    if model.is_subordinator:
        parts.append(Part('negative_increments', Convention.COUNT, float(negative), 0.0))
    grids = as_grids(n_grid)
    return TestReport.from_parts('theorem1', parts, rng, reps, n_grid=max(grids), notes=model.label)


def _largest_face_worker(model: LevyModel, n: int, rng: RngStream, count: int) -> Dict[str, np.ndarray]:
    largest = np.array([convex_minorant(path_sample(model, 1.0, n, rng)).lengths.max() for _ in range(count)])
    uniforms = rng.open_uniform((count, default_sticks()))
    remaining = np.cumprod(1.0 - uniforms, axis=1)
    lengths = uniforms * np.hstack((np.ones((count, 1)), remaining[:, :-1]))
    return {'face': largest, 'stick': lengths.max(axis=1)}


def ranked_length_check(model: LevyModel, n_grid: int, reps: int, rng: RngStream,
                        jobs: Optional[int] = None) -> TestReport:
    """Longest face against the longest uniform stick-breaking piece."""
    samples = run_replicates(partial(_largest_face_worker, model, n_grid), reps, rng, jobs)
    parts = [p_part('largest_length', *ks_two_sample(samples['face'], samples['stick']))]
    return TestReport.from_parts('ranked_length', parts, rng, reps, n_grid=n_grid, notes=model.label)


def _invariance_worker(model: LevyModel, n: int, rng: RngStream, count: int) -> Dict[str, np.ndarray]:
    lengths, moved, plain, mismatch = (np.empty(count) for _ in range(4))
    for k in range(count):
        path = path_sample(model, 1.0, n, rng)
        dec = convex_minorant(path)
        face, u, _ = draw_face(dec, rng)
        result = invariant_transform(path, u, dec, snap=True)
        lengths[k] = face.length
        moved[k] = result.transformed.values[n // 2]
        mismatch[k] = float(result.transformed.terminal != path.terminal)
        plain[k] = path_sample(model, 1.0, n, rng).values[n // 2]
    return {'length': lengths, 'moved': moved, 'plain': plain, 'mismatch': mismatch,
            'uniform': rng.open_uniform(count)}


def invariance_check(model: LevyModel, n_grid: int, reps: int, rng: RngStream,
                     jobs: Optional[int] = None) -> TestReport:
    """
    Moving the face that holds a uniform time to the front leaves the law
    of the path unchanged, and that face has a uniform length.
    """
    samples = run_replicates(partial(_invariance_worker, model, n_grid), reps, rng, jobs)
    parts = [
        p_part('face_length', *ks_two_sample(samples['length'], samples['uniform'])),
        p_part('midpoint_value', *ks_two_sample(samples['moved'], samples['plain'])),
        Part('terminal_changed', Convention.COUNT, float(samples['mismatch'].sum()), 0.0),
    ]
    return TestReport.from_parts('invariance', parts, rng, reps, n_grid=n_grid, notes=model.label)


def _functionals(values: np.ndarray) -> Dict[str, float]:
    return {'max': float(values.max()), 'mean': float(values.mean()),
            'midpoint': float(values[(values.size - 1) // 2])}


def _excursion_worker(model: LevyModel, n: int, rng: RngStream, count: int) -> Dict[str, np.ndarray]:
    out = {f"{side}_{name}": np.empty(count) for side in ('face', 'bridge') for name in FUNCTIONALS}
    dt = 1.0 / n
    for k in range(count):
        path = path_sample(model, 1.0, n, rng)
        face, _, _ = draw_face(convex_minorant(path), rng)
        for name, value in _functionals(excursion(path, face).values).items():
            out[f"face_{name}"][k] = value
        steps = int(rng.generator.integers(1, n + 1))
        walk = GridPath.from_increments(sample_increments(model, dt, rng, size=steps), dt)
        for name, value in _functionals(vervaat(knight_bridge(walk, walk.t0, walk.end)).values).items():
            out[f"bridge_{name}"][k] = value
    return out


def excursion_law_check(model: LevyModel, n_grid: Union[int, Sequence[int]], reps: int, rng: RngStream,
                        jobs: Optional[int] = None) -> TestReport:
    """
    Excursion above the face holding a uniform time against the Vervaat
    transform of a bridge of uniform length, through its maximum, mean and
    midpoint value.
    """
    if model.canonical().family != Family.BROWNIAN:
        raise UnsupportedError("The excursion law check compares against Gaussian bridges only")
    parts = []
    grids = as_grids(n_grid)
    for n in grids:
        samples = run_replicates(partial(_excursion_worker, model, n), reps, rng.child(n), jobs)
        for name in FUNCTIONALS:
            parts.append(p_part(f"{name}_n={n}", *ks_two_sample(samples[f"face_{name}"], samples[f"bridge_{name}"])))
    return TestReport.from_parts('excursion_law', parts, rng, reps, n_grid=max(grids), notes=model.label)


def _discovery_worker(model: LevyModel, n: int, rng: RngStream, count: int) -> Dict[str, np.ndarray]:
    first, second = np.full(count, np.nan), np.full(count, np.nan)
    for k in range(count):
        v_tildes = recursive_face_discovery(path_sample(model, 1.0, n, rng), 2, rng).v_tildes
        first[k] = v_tildes[0]
        if len(v_tildes) > 1:
            second[k] = v_tildes[1]
    return {'first': first, 'second': second}


def discovery_check(model: LevyModel, n_grid: int, reps: int, rng: RngStream,
                    jobs: Optional[int] = None) -> TestReport:
    """Relative lengths of the first two discovered faces are independent uniforms."""
    samples = run_replicates(partial(_discovery_worker, model, n_grid), reps, rng, jobs)
    both = ~np.isnan(samples['second'])
    first, second = samples['first'][both], samples['second'][both]
    rho, z = correlation_z(first, second)
    parts = [
        p_part('first', *ks_one_sample(samples['first'], uniform_cdf)),
        p_part('second', *ks_one_sample(second, uniform_cdf)),
        z_part('rank_correlation', z, rho),
    ]
    return TestReport.from_parts(
        'discovery', parts, rng, reps, n_grid=n_grid,
        notes=f"{model.label}, {int((~both).sum())} paths exhausted after one face",
    )


def _argmin_worker(model: LevyModel, n: int, rng: RngStream, count: int) -> Dict[str, np.ndarray]:
    walks = sample_walks(model, 1.0, n, count, rng)
    canonical = model.canonical()
    if canonical.family == Family.BROWNIAN:
        rho, m = refined_min_records(walks, canonical.sigma, 1.0 / n, rng)
    else:
        index = n - np.argmin(walks[:, ::-1], axis=1)
        rho, m = index / n, walks[np.arange(count), index]
    return {'rho': rho, 'm': m}


def argmin_support_check(model: LevyModel, n_grid: int, reps: int, rng: RngStream,
                         jobs: Optional[int] = None, bins: int = 20,
                         negative_control: bool = False) -> TestReport:
    """
    Every bin of the histogram of the minimizing time on [0, 1] is hit;
    for driftless Brownian motion the time follows the arcsine law.

    The joint (time, value) histogram is reported as a diagnostic only.
    """
    samples = run_replicates(partial(_argmin_worker, model, n_grid), reps, rng, jobs)
    rho = samples['rho']
    histogram, _ = np.histogram(rho, bins=bins, range=(0.0, 1.0))
    parts = [Part('empty_bins', Convention.COUNT, float(np.sum(histogram == 0)), 0.0)]
    canonical = model.canonical()
    if canonical.family == Family.BROWNIAN and canonical.drift == 0:
        parts.append(p_part('arcsine', *ks_one_sample(rho, arcsine_cdf)))
    joint, _, _ = np.histogram2d(rho, samples['m'], bins=10)
    return TestReport.from_parts(
        'argmin_support', parts, rng, reps, n_grid=n_grid, notes=model.label,
        negative_control=negative_control,
        details={'histogram': histogram.tolist(), 'joint_empty_fraction': float(np.mean(joint == 0))},
    )

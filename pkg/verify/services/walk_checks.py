"""
Exact random-walk identities: chords, face counts, hull correctness and
discrete invariance of the uniformly chosen face.
"""
import math
from functools import partial
from typing import Dict, Optional, Sequence, Union

import numpy as np

from levy_models.catalog import LevyModel
from levy_models.rng import RngStream
from levy_models.services import sample_walks
from minorant_core.paths import GridPath
from minorant_core.services import brute_force_faces, convex_minorant, hull_indices

from .common import as_grids, uniform_face_worker
from .replicates import run_replicates
from .reports import Convention, Part, TestReport, p_part, z_part
from .statistics import (
    chi_square_uniform,
    harmonic,
    harmonic_variance,
    ks_one_sample,
    mean_cycle_count,
    proportion_z,
    uniform_cdf,
)


def _chord_worker(model: LevyModel, n: int, rng: RngStream, count: int) -> Dict[str, np.ndarray]:
    walks = sample_walks(model, 1.0, n, count, rng)
    chord = (np.arange(1, n) / n)[None, :] * walks[:, [n]]
    return {'above': np.all(walks[:, 1:n] > chord, axis=1).astype(float)}


def chord_probability_check(model: LevyModel, n: Union[int, Sequence[int]], reps: int, rng: RngStream,
                            jobs: Optional[int] = None) -> TestReport:
    """Walk strictly above its chord from (0, 0) to (n, S_n) with probability 1/n."""
    parts = []
    for steps in as_grids(n):
        above = run_replicates(partial(_chord_worker, model, steps), reps, rng.child(steps), jobs)['above']
        frequency = float(above.mean())
        parts.append(z_part(f"n={steps}", proportion_z(int(above.sum()), above.size, 1.0 / steps), frequency))
    return TestReport.from_parts(
        'chord_probability', parts, rng, reps, notes=f"{model.label}, expected frequency 1/n",
    )


def _face_count_worker(model: LevyModel, n: int, rng: RngStream, count: int) -> Dict[str, np.ndarray]:
    walks = sample_walks(model, 1.0, n, count, rng)
    return {'faces': np.array([len(hull_indices(row)) - 1 for row in walks], dtype=float)}


def face_count_check(model: LevyModel, n: int, reps: int, rng: RngStream,
                     jobs: Optional[int] = None) -> TestReport:
    """Mean number of faces of an n-step walk equals the harmonic number H_n."""
    faces = run_replicates(partial(_face_count_worker, model, n), reps, rng, jobs)['faces']
    expected = harmonic(n)
    variance = harmonic_variance(n)
    if variance > 0:
        z = (faces.mean() - expected) / math.sqrt(variance / faces.size)
    else:
        z = 0.0 if np.all(faces == expected) else math.inf
    oracle = mean_cycle_count(3)
    parts = [
        z_part('mean_faces', float(z), float(faces.mean())),
        Part('cycle_oracle_n3', Convention.COUNT, float(float(oracle) != harmonic(3)), 0.0),
    ]
    return TestReport.from_parts(
        'face_count', parts, rng, reps, n_grid=n,
        notes=f"{model.label}, H_{n} = {expected:.6f}",
        details={'harmonic': expected, 'cycle_oracle_n3': str(oracle)},
    )


def _hull_oracle_worker(max_len: int, rng: RngStream, count: int) -> Dict[str, np.ndarray]:
    mismatches = np.zeros(count)
    for k in range(count):
        n = 1 + k % (max_len - 1)
        increments = rng.standard_normal(n) if k % 2 else rng.generator.standard_cauchy(n)
        path = GridPath.from_increments(increments, 1.0 / n)
        expected = [(face.g_index, face.d_index) for face in brute_force_faces(path)]
        actual = [(face.g_index, face.d_index) for face in convex_minorant(path)]
        mismatches[k] = float(expected != actual)
    return {'mismatch': mismatches}


def hull_oracle_check(reps: int, max_len: int, rng: RngStream, jobs: Optional[int] = None) -> TestReport:
    """Monotone-chain hull against the exhaustive pairwise search on walks of at most ``max_len`` points."""
    mismatches = run_replicates(partial(_hull_oracle_worker, max_len), reps, rng, jobs)['mismatch']
    parts = [Part('mismatches', Convention.COUNT, float(mismatches.sum()), 0.0)]
    return TestReport.from_parts('hull_oracle', parts, rng, reps, n_grid=max_len - 1,
                                 notes='Gaussian and Cauchy walks')


def _slope_worker(n: int, rng: RngStream, count: int) -> Dict[str, np.ndarray]:
    walks = sample_walks(LevyModel.brownian(), 1.0, n, count, rng)
    violations = np.zeros(count)
    for k, row in enumerate(walks):
        slopes = convex_minorant(GridPath(0.0, 1.0 / n, row)).slopes
        violations[k] = float(np.any(np.diff(slopes) <= 0))
    return {'violation': violations}


def slope_monotonicity_check(reps: int, n: int, rng: RngStream, jobs: Optional[int] = None) -> TestReport:
    """Face slopes increase strictly on Gaussian walks."""
    violations = run_replicates(partial(_slope_worker, n), reps, rng, jobs)['violation']
    parts = [Part('violations', Convention.COUNT, float(violations.sum()), 0.0)]
    return TestReport.from_parts('slope_monotonicity', parts, rng, reps, n_grid=n)


def uniform_face_length_check(model: LevyModel, n_grid: Union[int, Sequence[int]], reps: int, rng: RngStream,
                              jobs: Optional[int] = None, exact: bool = False) -> TestReport:
    """
    Length of the face holding a uniform time is uniform.

    With ``exact`` the number of steps of that face is compared with the
    uniform law on {1, ..., n} by chi-square; otherwise the length is
    compared with Uniform(0, 1) by KS.
    """
    parts = []
    redraws = 0
    grids = as_grids(n_grid)
    for n in grids:
        faces = run_replicates(partial(uniform_face_worker, model, n), reps, rng.child(n), jobs)
        redraws += int(faces['redraws'].sum())
        if exact:
            counts = np.bincount(faces['steps'].astype(int) - 1, minlength=n)
            parts.append(p_part(f"steps_n={n}", *chi_square_uniform(counts)))
        else:
            parts.append(p_part(f"length_n={n}", *ks_one_sample(faces['length'], uniform_cdf)))
    return TestReport.from_parts(
        'uniform_face_length_exact' if exact else 'uniform_face_length', parts, rng, reps,
        n_grid=max(grids), notes=f"{model.label}, {redraws} vertex redraws",
        details={'vertex_redraws': redraws},
    )

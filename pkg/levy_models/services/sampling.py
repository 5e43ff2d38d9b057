"""
Increment and path samplers for the model catalog.
"""
import logging
import math

import numpy as np

from minorant_core.paths import GridPath

from ..catalog import Family, LevyModel
from ..exceptions import DomainError, NumericError, UnsupportedError
from ..rng import RngStream

logger = logging.getLogger(__name__)


def _check_dt(dt) -> np.ndarray:
    dt = np.asarray(dt, dtype=float)
    if not np.all(np.isfinite(dt)) or np.any(dt <= 0):
        raise DomainError(f"Time increments must be positive and finite, got {dt}")
    return dt


def _chambers_mallows_stuck(alpha: float, beta: float, rng: RngStream, shape) -> np.ndarray:
    """Standard S1 stable variates with index alpha != 1 and unit scale."""
    u = rng.uniform(-math.pi / 2, math.pi / 2, shape)
    w = rng.exponential(1.0, shape)
    zeta = beta * math.tan(math.pi * alpha / 2)
    shift = math.atan(zeta) / alpha
    factor = (1.0 + zeta * zeta) ** (1.0 / (2.0 * alpha))
    return (
        factor * np.sin(alpha * (u + shift)) / np.cos(u) ** (1.0 / alpha)
        * (np.cos(u - alpha * (u + shift)) / w) ** ((1.0 - alpha) / alpha)
    )


def sample_increments(model: LevyModel, dt, rng: RngStream, size=None) -> np.ndarray:
    """
    Draw X_dt for every entry of ``dt``.

    Args:
        model: Levy family descriptor
        dt: positive time step, scalar or array
        rng: stream to draw from
        size: output shape; defaults to the shape of ``dt``

    Returns:
        ndarray of independent increments, broadcast against ``dt``
    """
    dt = _check_dt(dt)
    shape = dt.shape if size is None else size
    model = model.canonical()

    if model.family == Family.BROWNIAN:
        return model.drift * dt + model.sigma * np.sqrt(dt) * rng.standard_normal(shape)
    if model.family == Family.CAUCHY:
        return model.scale * dt * rng.generator.standard_cauchy(shape)
    if model.family == Family.STABLE:
        base = _chambers_mallows_stuck(model.alpha, model.beta, rng, shape)
        return model.scale * dt ** (1.0 / model.alpha) * base
    return np.exp(sample_log_increments(model, dt, rng, shape))


def sample_log_increments(model: LevyModel, dt, rng: RngStream, size=None) -> np.ndarray:
    """
    log X_dt for the Gamma subordinator, drawn as log G(dt + 1) + log(U) / dt.

    Small-shape Gamma variates underflow to 0.0 as floats; their logs do not.
    """
    dt = _check_dt(dt)
    shape = dt.shape if size is None else size
    if model.canonical().family != Family.GAMMA:
        raise UnsupportedError(f"Log-space increments are only drawn for gamma, not {model.label}")
    return rng.log_gamma(np.broadcast_to(dt, shape), shape)


def increment_sample(model: LevyModel, dt: float, rng: RngStream) -> float:
    return float(sample_increments(model, float(dt), rng))


def path_sample(model: LevyModel, horizon: float, n_steps: int, rng: RngStream) -> GridPath:
    """
    Random walk V_k = X_{k h}, h = horizon / n_steps, starting at 0.

    Gamma paths keep the logs of their steps, which the minorant uses to
    order faces whose increments underflow.
    """
    if n_steps < 1:
        raise DomainError(f"n_steps must be at least 1, got {n_steps}")
    if not horizon > 0:
        raise DomainError(f"horizon must be positive, got {horizon}")
    log_steps = None
    if model.canonical().family == Family.GAMMA:
        log_steps = sample_log_increments(model, horizon / n_steps, rng, size=n_steps)
        increments = np.exp(log_steps)
    else:
        increments = sample_increments(model, horizon / n_steps, rng, size=n_steps)
    values = np.concatenate(([0.0], np.cumsum(increments)))
    bad = np.flatnonzero(~np.isfinite(values))
    if bad.size:
        logger.warning(f"Non-finite value simulating {model.label} at step {bad[0]}")
        raise NumericError(f"Non-finite increment at step {bad[0]}", step=int(bad[0]))
    return GridPath(0.0, horizon / n_steps, values, log_steps=log_steps)


def sample_walks(model: LevyModel, horizon: float, n_steps: int, n_paths: int,
                 rng: RngStream) -> np.ndarray:
    """Matrix of ``n_paths`` walks (rows), each with ``n_steps + 1`` values from 0."""
    if n_steps < 1 or n_paths < 1:
        raise DomainError(f"Need positive n_steps and n_paths, got {n_steps}, {n_paths}")
    increments = sample_increments(model, horizon / n_steps, rng, size=(n_paths, n_steps))
    walks = np.zeros((n_paths, n_steps + 1))
    np.cumsum(increments, axis=1, out=walks[:, 1:])
    if not np.all(np.isfinite(walks)):
        raise NumericError("Non-finite value in simulated walks")
    return walks

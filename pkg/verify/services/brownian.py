"""
Location and value of path minima, with Brownian bridge refinement.

Between two grid points a Brownian path is a bridge, whose minimum has a
closed-form law. Sampling it per step removes the grid bias from the
minimum value. Given its minimum, the time of a bridge minimum is an
inverse Gaussian mixture, drawn exactly inside the step that holds the
overall minimum.
"""
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from minorant_core.paths import GridPath
from minorant_core.services import argmin

from levy_models.rng import RngStream

_MIN_GAP = 1e-150


@dataclass(frozen=True)
class MinRecord:
    """Last time ``rho`` at which X_t - a t is minimal on the path, and that minimum ``m``."""

    rho: float
    m: float


def min_record(path: GridPath, slope: float) -> MinRecord:
    tilted = GridPath(0.0, path.dt, path.values - slope * path.dt * np.arange(path.values.size))
    rho, m = argmin(tilted)
    return MinRecord(rho, m)


def bridge_minima(start, end, sigma: float, h, uniforms) -> np.ndarray:
    """Inverse-CDF draw of the minimum of a Brownian bridge from ``start`` to ``end`` over time ``h``."""
    start = np.asarray(start, dtype=float)
    end = np.asarray(end, dtype=float)
    return 0.5 * (start + end - np.sqrt((end - start) ** 2 - 2.0 * sigma ** 2 * h * np.log(uniforms)))


def bridge_argmin_times(start, end, minima, sigma: float, h, rng: RngStream) -> np.ndarray:
    """
    Time in (0, h) at which a Brownian bridge from ``start`` to ``end`` reaches ``minima``.

    With a = (start - m) / (sigma sqrt h) and b = (end - m) / (sigma sqrt h),
    u = t / (h - t) is IG(a / b, a^2) with probability b / (a + b) and the
    reciprocal of an IG(b / a, b^2) draw otherwise.
    """
    start, end, minima, h = np.broadcast_arrays(*(np.asarray(v, dtype=float) for v in (start, end, minima, h)))
    spread = sigma * np.sqrt(h)
    a = np.maximum((start - minima) / spread, _MIN_GAP)
    b = np.maximum((end - minima) / spread, _MIN_GAP)
    size = a.shape
    from_start = rng.wald(a / b, a ** 2, size)
    from_end = 1.0 / rng.wald(b / a, b ** 2, size)
    u = np.where(rng.open_uniform(size) * (a + b) < b, from_start, from_end)
    return h * u / (1.0 + u)


def refined_min_records(walks: np.ndarray, sigma: float, h, rng: RngStream) -> Tuple[np.ndarray, np.ndarray]:
    """
    Minimum location and value for each row of ``walks``.

    Args:
        walks: Brownian values on a grid, one path per row
        sigma: volatility of the paths
        h: step of each row, scalar or one per row
        rng: stream for the bridge minima and their times

    Returns:
        tuple: (rho, m) arrays
    """
    h = np.broadcast_to(np.asarray(h, dtype=float), (walks.shape[0],))
    minima = bridge_minima(walks[:, :-1], walks[:, 1:], sigma, h[:, None], rng.open_uniform(walks[:, 1:].shape))
    step = np.argmin(minima, axis=1)
    rows = np.arange(walks.shape[0])
    m = minima[rows, step]
    offset = bridge_argmin_times(walks[rows, step], walks[rows, step + 1], m, sigma, h, rng)
    return step * h + offset, m

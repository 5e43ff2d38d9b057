"""
Queries on a minorant decomposition: faces, excursions, slopes, argmin.
"""
import bisect
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from levy_models.exceptions import DomainError, VertexCollisionError

from ..paths import GridPath
from .minorant import Face, MinorantDecomposition

VERTEX_TOL = 1e-12


def face_containing(dec: MinorantDecomposition, u: float) -> Face:
    """The unique face with g < u <= d."""
    if not dec.t0 < u < dec.end:
        raise DomainError(f"Point {u} is outside the open interval ({dec.t0}, {dec.end})")
    times = dec.vertex_times
    tol = VERTEX_TOL * max(1.0, abs(dec.end))
    position = bisect.bisect_left(times.tolist(), u)
    for neighbour in (position - 1, position):
        if 0 <= neighbour < times.size and abs(times[neighbour] - u) <= tol:
            raise VertexCollisionError(f"Point {u} hits the minorant vertex {times[neighbour]}")
    return dec.faces[position - 1]


def excursion(path: GridPath, face: Face) -> GridPath:
    """Path minus the face chord, on [0, d - g]; zero at both ends."""
    i = path.index_of(face.g)
    j = path.index_of(face.d)
    if j <= i:
        raise DomainError(f"Face ({face.g}, {face.d}) is empty on the path grid")
    s = np.arange(j - i + 1)
    local = path.values[i:j + 1] - path.values[i]
    return GridPath(0.0, path.dt, local - (s / (j - i)) * local[-1])


@dataclass(frozen=True, eq=False)
class StepFunction:
    """Right-continuous step function: value ``levels[k]`` on [breaks[k], breaks[k + 1])."""

    breaks: np.ndarray
    levels: np.ndarray

    def __call__(self, t):
        position = np.searchsorted(self.breaks, t, side='right') - 1
        position = np.clip(position, 0, self.levels.size - 1)
        value = self.levels[position]
        return float(value) if np.ndim(value) == 0 else value

    def is_nondecreasing(self) -> bool:
        return bool(np.all(np.diff(self.levels) >= 0))


def right_derivative(dec: MinorantDecomposition) -> StepFunction:
    return StepFunction(breaks=dec.vertex_times, levels=dec.slopes)


def slope_passage(dec: MinorantDecomposition, x: float) -> float:
    """I_x = inf{t >= 0 : D_t > x}, measured from the start of the path."""
    above = np.flatnonzero(dec.slopes > x)
    if above.size == 0:
        return dec.duration
    return dec.faces[above[0]].g - dec.t0


def ranked_lengths(dec: MinorantDecomposition) -> np.ndarray:
    return np.sort(dec.lengths)[::-1]


def argmin(path: GridPath) -> Tuple[float, float]:
    """Time and value of the minimum; ties go to the last minimizing index."""
    index = path.n_steps - int(np.argmin(path.values[::-1]))
    return path.time_at(index), float(path.values[index])


def contact_fraction(path: GridPath, dec: MinorantDecomposition) -> float:
    """Share of grid points where the path touches its minorant."""
    gap = path.values - dec.on_grid(path)
    return float(np.mean(np.abs(gap) <= VERTEX_TOL * path.scale))

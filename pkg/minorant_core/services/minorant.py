"""
Convex minorant of a grid path.

The minorant is the lower convex hull of the grid points (t0 + k dt, V_k).
Hull vertices are selected path points, so the minorant touches the path
exactly at every vertex. Collinear middle points are dropped, which keeps
face slopes strictly increasing.
"""
import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np
from django.conf import settings
from scipy import special

from levy_models.exceptions import DomainError

from ..paths import GridPath

logger = logging.getLogger(__name__)

MAX_PRUNE_ROUNDS = 256


@dataclass(frozen=True)
class Face:
    """Maximal interval (g, d] on which the minorant is linear."""

    g: float
    d: float
    length: float
    increment: float
    slope: float
    g_index: Optional[int] = None
    d_index: Optional[int] = None

    def __post_init__(self):
        if self.d < self.g or not self.length > 0:
            raise DomainError(f"Face needs positive length, got ({self.g}, {self.d})")

    @classmethod
    def from_increment(cls, g: float, length: float, increment: float, **indices) -> 'Face':
        return cls(g, g + length, length, increment, increment / length, **indices)

    def as_row(self) -> Tuple[float, float, float, float, float]:
        return (self.g, self.d, self.length, self.increment, self.slope)


@dataclass(frozen=True, eq=False)
class MinorantDecomposition:
    faces: Tuple[Face, ...]
    vertex_values: np.ndarray

    def __post_init__(self):
        faces = tuple(self.faces)
        values = np.asarray(self.vertex_values, dtype=float)
        if not faces:
            raise DomainError("A decomposition needs at least one face")
        if values.size != len(faces) + 1:
            raise DomainError(f"Expected {len(faces) + 1} vertex values, got {values.size}")
        object.__setattr__(self, 'faces', faces)
        object.__setattr__(self, 'vertex_values', values)

    def __len__(self):
        return len(self.faces)

    def __iter__(self):
        return iter(self.faces)

    @property
    def t0(self) -> float:
        return self.faces[0].g

    @property
    def end(self) -> float:
        return self.faces[-1].d

    @property
    def duration(self) -> float:
        return self.end - self.t0

    @property
    def vertex_times(self) -> np.ndarray:
        return np.array([self.faces[0].g] + [face.d for face in self.faces])

    @property
    def vertex_indices(self) -> Optional[List[int]]:
        if self.faces[0].g_index is None:
            return None
        return [self.faces[0].g_index] + [face.d_index for face in self.faces]

    @property
    def lengths(self) -> np.ndarray:
        return np.array([face.length for face in self.faces])

    @property
    def increments(self) -> np.ndarray:
        return np.array([face.increment for face in self.faces])

    @property
    def slopes(self) -> np.ndarray:
        return np.array([face.slope for face in self.faces])

    def value_at(self, t):
        """Minorant value; linear interpolation between vertices."""
        value = np.interp(t, self.vertex_times, self.vertex_values)
        return float(value) if np.ndim(value) == 0 else value

    def on_grid(self, path: GridPath) -> np.ndarray:
        """Minorant evaluated at every grid point of ``path``."""
        indices = self.vertex_indices
        if indices is None:
            return self.value_at(path.times)
        return np.interp(np.arange(path.values.size), indices, self.vertex_values)


def _tolerance(values: np.ndarray, span: int, eps: Optional[float]) -> float:
    if eps is None:
        eps = getattr(settings, 'MINORANT_COLLINEAR_EPS', 1e-12)
    return eps * max(1.0, float(np.max(np.abs(values)))) * max(1, span)


def _prune_reflex(values: np.ndarray, tol: float) -> np.ndarray:
    """
    Drop points lying on or above the chord of their current neighbours.

    Such a point is never a hull vertex, so the surviving indices have the
    same lower hull. Each round is a vectorized pass.
    """
    keep = np.arange(values.size)
    for _ in range(MAX_PRUNE_ROUNDS):
        if keep.size <= 2:
            break
        left, mid, right = keep[:-2], keep[1:-1], keep[2:]
        cross = (mid - left) * (values[right] - values[left]) - (values[mid] - values[left]) * (right - left)
        reflex = cross <= tol
        if not reflex.any():
            break
        mask = np.ones(keep.size, dtype=bool)
        mask[1:-1] = ~reflex
        keep = keep[mask]
    return keep


def hull_indices(values: Sequence[float], eps: Optional[float] = None) -> List[int]:
    """Indices of the lower convex hull of the points (k, values[k])."""
    values = np.asarray(values, dtype=float)
    tol = _tolerance(values, values.size - 1, eps)
    threshold = getattr(settings, 'MINORANT_PRUNE_THRESHOLD', 256)
    candidates = _prune_reflex(values, tol) if values.size > threshold else np.arange(values.size)

    y = values.tolist()
    hull: List[int] = []
    for k in candidates.tolist():
        while len(hull) >= 2:
            a, b = hull[-2], hull[-1]
            if (b - a) * (y[k] - y[a]) - (y[b] - y[a]) * (k - a) > tol:
                break
            hull.pop()
        hull.append(k)
    return hull


def log_hull_indices(log_steps: Sequence[float]) -> List[int]:
    """
    Hull indices of a walk with positive steps, given the logs of the steps.

    Slopes from the current vertex are compared as log(rise) - log(run), so
    faces stay apart where the steps underflow as floats. The farthest
    point of minimal slope becomes the next vertex.
    """
    log_steps = np.asarray(log_steps, dtype=float)
    n = log_steps.size
    hull = [0]
    while hull[-1] < n:
        start = hull[-1]
        log_slopes = np.logaddexp.accumulate(log_steps[start:]) - np.log(np.arange(1, n - start + 1))
        hull.append(n - int(np.argmin(log_slopes[::-1])))
    return hull


def _faces_between(path: GridPath, indices: Sequence[int]) -> List[Face]:
    faces = []
    for i, j in zip(indices[:-1], indices[1:]):
        if path.log_steps is None:
            increment = float(path.values[j] - path.values[i])
        else:
            increment = float(np.exp(special.logsumexp(path.log_steps[i:j])))
        length = (j - i) * path.dt
        faces.append(Face(
            g=path.time_at(i),
            d=path.time_at(j),
            length=length,
            increment=increment,
            slope=increment / length,
            g_index=i,
            d_index=j,
        ))
    return faces


def convex_minorant(path: GridPath, eps: Optional[float] = None) -> MinorantDecomposition:
    """
    Faces and vertex values of the greatest convex function below the grid path.

    Paths carrying log steps use the log-space hull; their float slopes
    are then only non-decreasing where increments underflow.
    """
    if path.log_steps is None:
        indices = hull_indices(path.values, eps)
    else:
        indices = log_hull_indices(path.log_steps)
    return MinorantDecomposition(
        faces=tuple(_faces_between(path, indices)),
        vertex_values=path.values[indices],
    )


def brute_force_faces(path: GridPath, eps: Optional[float] = None) -> List[Face]:
    """
    Faces by exhaustive search over index pairs, O(n^3).

    (i, j) is a face when every point is weakly above the line through
    points i and j and no point outside [i, j] lies on that line.
    """
    values = path.values
    n = values.size
    tol = _tolerance(values, n - 1, eps)
    k = np.arange(n)
    pairs = []
    for i in range(n - 1):
        for j in range(i + 1, n):
            height = (j - i) * (values - values[i]) - (values[j] - values[i]) * (k - i)
            if np.any(height < -tol):
                continue
            outside = (k < i) | (k > j)
            if np.any(outside & (np.abs(height) <= tol)):
                continue
            pairs.append((i, j))
    return [face for i, j in pairs for face in _faces_between(path, (i, j))]

"""
Uniform stick-breaking and the face points it generates.

Breaking [0, t] with independent uniforms and attaching to each stick an
independent increment X_L gives the lengths and increments of the faces
of the convex minorant of X on [0, t].
"""
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np
from django.conf import settings

from levy_models.catalog import LevyModel
from levy_models.exceptions import DomainError
from levy_models.rng import RngStream
from levy_models.services import sample_increments
from minorant_core.services import Face, MinorantDecomposition


@dataclass(frozen=True, eq=False)
class StickBreak:
    """
    L_1 = t V_1 and L_{i+1} = V_{i+1} (t - S_i).

    ``partial_sums`` are t minus the remaining stick, so they are
    nondecreasing and never exceed t even when the remainder falls below
    floating point resolution; ``residual`` keeps the exact product form.
    """

    horizon: float
    uniforms: np.ndarray = field(repr=False)
    lengths: np.ndarray = field(repr=False)
    partial_sums: np.ndarray = field(repr=False)
    residual: float = 0.0

    @property
    def n_sticks(self) -> int:
        return self.lengths.size


@dataclass(frozen=True)
class FacePoint:
    length: float
    increment: float

    def __post_init__(self):
        if not self.length > 0:
            raise DomainError(f"Face point length must be positive, got {self.length}")

    @property
    def slope(self) -> float:
        return self.increment / self.length


def default_sticks() -> int:
    return getattr(settings, 'MINORANT_DEFAULT_STICKS', 64)


def stick_break(t: float, n_sticks: Optional[int] = None, rng: Optional[RngStream] = None,
                uniforms: Optional[Sequence[float]] = None) -> StickBreak:
    """
    Break a stick of length ``t``.

    Args:
        t: horizon
        n_sticks: number of sticks; defaults to MINORANT_DEFAULT_STICKS
        rng: stream for the uniforms
        uniforms: fixed uniforms in (0, 1) used instead of ``rng``

    Returns:
        StickBreak with lengths, partial sums and residual t * prod(1 - V_i)
    """
    if not t > 0 or not np.isfinite(t):
        raise DomainError(f"Horizon must be positive and finite, got {t}")
    if uniforms is None:
        n_sticks = default_sticks() if n_sticks is None else n_sticks
        if n_sticks < 1:
            raise DomainError(f"n_sticks must be at least 1, got {n_sticks}")
        if rng is None:
            raise DomainError("Either a random stream or fixed uniforms are required")
        uniforms = rng.open_uniform(n_sticks)
    uniforms = np.array(uniforms, dtype=float, ndmin=1)
    if uniforms.size < 1 or np.any((uniforms <= 0) | (uniforms >= 1)):
        raise DomainError("Stick-breaking uniforms must lie in the open interval (0, 1)")

    remaining = t * np.cumprod(1.0 - uniforms)
    lengths = uniforms * np.concatenate(([t], remaining[:-1]))
    return StickBreak(
        horizon=float(t),
        uniforms=uniforms,
        lengths=lengths,
        partial_sums=t - remaining,
        residual=float(remaining[-1]),
    )


def points_from_arrays(lengths, increments) -> List[FacePoint]:
    return [FacePoint(float(length), float(increment)) for length, increment in zip(lengths, increments)]


def points_to_arrays(points: Sequence[FacePoint]) -> Tuple[np.ndarray, np.ndarray]:
    lengths = np.array([point.length for point in points], dtype=float)
    increments = np.array([point.increment for point in points], dtype=float)
    return lengths, increments


def theorem1_sample(model: LevyModel, t: float, n_sticks: Optional[int], rng: RngStream,
                    sticks: Optional[StickBreak] = None) -> List[FacePoint]:
    """Stick lengths L_i with increments Y_i ~ X_{L_i}, independent given the lengths."""
    if sticks is None:
        sticks = stick_break(t, n_sticks, rng)
    increments = sample_increments(model, sticks.lengths, rng)
    return points_from_arrays(sticks.lengths, increments)


def minorant_from_points(points: Sequence[FacePoint], t0: float = 0.0,
                         start_value: float = 0.0) -> MinorantDecomposition:
    """
    Arrange the points by increasing slope into a convex piecewise linear function.

    Points sharing a slope are collinear and are joined into one face, as
    happens when subordinator increments underflow to zero.
    """
    if not points:
        raise DomainError("At least one face point is required")
    lengths, increments = points_to_arrays(points)
    slopes = increments / lengths
    order = np.argsort(slopes, kind='stable')
    sorted_slopes = slopes[order]
    starts = np.concatenate(([True], np.diff(sorted_slopes) != 0))
    groups = np.cumsum(starts) - 1

    lengths = np.bincount(groups, weights=lengths[order])
    increments = np.bincount(groups, weights=increments[order])
    face_slopes = sorted_slopes[starts]
    ends = t0 + np.concatenate(([0.0], np.cumsum(lengths)))
    values = start_value + np.concatenate(([0.0], np.cumsum(increments)))
    faces = tuple(
        Face(float(ends[k]), float(ends[k + 1]), float(lengths[k]), float(increments[k]), float(face_slopes[k]))
        for k in range(lengths.size)
    )
    return MinorantDecomposition(faces, values)

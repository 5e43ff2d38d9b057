"""
Face point processes: exponential horizon and infinite horizon.
"""
import logging
from typing import List, Optional, Tuple

from levy_models.catalog import LevyModel
from levy_models.exceptions import DomainError
from levy_models.rng import RngStream
from levy_models.services import path_sample
from minorant_core.services import convex_minorant

from .intensity import check_slope_cap
from .sticks import FacePoint, theorem1_sample

logger = logging.getLogger(__name__)


def ppp_exponential_horizon(model: LevyModel, theta: float, n_sticks: Optional[int],
                            rng: RngStream) -> Tuple[float, List[FacePoint]]:
    """
    Faces of the minorant on [0, T] with T ~ Exponential(theta).

    The points form a Poisson point process with intensity
    exp(-theta t) (dt / t) P(X_t in dx).
    """
    if not theta > 0:
        raise DomainError(f"theta must be positive, got {theta}")
    horizon = float(rng.exponential(1.0 / theta))
    return horizon, theorem1_sample(model, horizon, n_sticks, rng)


def infinite_horizon_points(model: LevyModel, slope_cap: float, horizon: float, n_grid: int,
                            rng: RngStream) -> List[FacePoint]:
    """Faces with slope below ``slope_cap`` of the minorant of a path on [0, horizon]."""
    check_slope_cap(model, slope_cap)
    path = path_sample(model, horizon, n_grid, rng)
    points = [
        FacePoint(face.length, face.increment)
        for face in convex_minorant(path)
        if face.slope < slope_cap
    ]
    logger.debug(f"{len(points)} faces below slope {slope_cap} on [0, {horizon:g}]")
    return points

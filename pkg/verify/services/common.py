"""
Helpers shared by the verification checks.
"""
import logging
from typing import Dict, Sequence, Tuple, Union

import numpy as np

from levy_models.catalog import LevyModel
from levy_models.exceptions import NumericError, VertexCollisionError
from levy_models.rng import RngStream
from levy_models.services import path_sample
from minorant_core.services import Face, MinorantDecomposition, convex_minorant, face_containing

logger = logging.getLogger(__name__)

MAX_REDRAWS = 100


def as_grids(n_grid: Union[int, Sequence[int]]) -> Tuple[int, ...]:
    return (int(n_grid),) if np.isscalar(n_grid) else tuple(int(n) for n in n_grid)


def draw_face(dec: MinorantDecomposition, rng: RngStream) -> Tuple[Face, float, int]:
    """Uniform time, the face containing it and the number of re-draws on vertex hits."""
    for redraws in range(MAX_REDRAWS):
        u = dec.t0 + dec.duration * float(rng.open_uniform())
        try:
            return face_containing(dec, u), u, redraws
        except VertexCollisionError:
            logger.info(f"Uniform time {u} hit a vertex, drawing again")
    raise NumericError(f"{MAX_REDRAWS} uniform draws all hit minorant vertices")


def uniform_face_worker(model: LevyModel, n_grid: int, rng: RngStream, count: int) -> Dict[str, np.ndarray]:
    """Length, increment and step count of the face holding a uniform time, per path."""
    lengths, increments, steps, redraws = (np.empty(count) for _ in range(4))
    for k in range(count):
        dec = convex_minorant(path_sample(model, 1.0, n_grid, rng))
        face, _, redraws[k] = draw_face(dec, rng)
        lengths[k], increments[k] = face.length, face.increment
        steps[k] = face.d_index - face.g_index
    return {'length': lengths, 'increment': increments, 'steps': steps, 'redraws': redraws}

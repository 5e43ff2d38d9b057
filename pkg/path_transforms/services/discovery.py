"""
Recursive size-biased discovery of minorant faces.

Each round picks a uniform time in the current path, moves the face that
contains it to the front with the invariant transform, records the
fraction of the path it covers and continues on what is left after it.
"""
import logging
from dataclasses import dataclass, field
from typing import List, Optional

from levy_models.exceptions import DomainError, NumericError, VertexCollisionError
from levy_models.rng import RngStream
from minorant_core.paths import GridPath
from minorant_core.services import Face

from .transforms import invariant_transform

logger = logging.getLogger(__name__)

MAX_REDRAWS = 100


@dataclass(frozen=True, eq=False)
class DiscoveryStep:
    v_tilde: float
    face: Face
    steps: int
    transformed: GridPath
    residual: Optional[GridPath]


@dataclass(frozen=True, eq=False)
class DiscoveryResult:
    steps: List[DiscoveryStep] = field(default_factory=list)
    residual: Optional[GridPath] = None
    steps_completed: int = 0
    stopped_early: bool = False
    redraws: int = 0

    @property
    def v_tildes(self) -> List[float]:
        return [step.v_tilde for step in self.steps]


def _draw_transform(path: GridPath, rng: RngStream):
    for attempt in range(MAX_REDRAWS):
        u = path.t0 + path.duration * float(rng.open_uniform())
        try:
            return invariant_transform(path, u, snap=True), attempt
        except VertexCollisionError:
            logger.info(f"Uniform time {u} hit a minorant vertex, drawing again")
    raise NumericError(f"{MAX_REDRAWS} uniform draws all hit minorant vertices")


def recursive_face_discovery(path: GridPath, k: int, rng: RngStream) -> DiscoveryResult:
    """
    Discover up to ``k`` faces of ``path``.

    Args:
        path: grid path starting at 0
        k: number of rounds
        rng: stream for the uniform times

    Returns:
        DiscoveryResult: per round the relative length v_tilde of the face
        within the current path, the face itself, the transformed path and
        the residual path; stops early once nothing is left
    """
    if k < 1:
        raise DomainError(f"k must be at least 1, got {k}")
    residual = GridPath(0.0, path.dt, path.values)
    steps: List[DiscoveryStep] = []
    redraws = 0

    for round_index in range(k):
        if residual is None:
            logger.info(f"Path exhausted after {round_index} of {k} rounds")
            return DiscoveryResult(steps, None, round_index, True, redraws)
        result, attempts = _draw_transform(residual, rng)
        redraws += attempts
        face_steps = result.face.d_index - result.face.g_index
        transformed = result.transformed.values
        remaining = None
        if face_steps < residual.n_steps:
            remaining = GridPath(0.0, residual.dt, transformed[face_steps:] - transformed[face_steps])
        steps.append(DiscoveryStep(
            v_tilde=face_steps / residual.n_steps,
            face=result.face,
            steps=face_steps,
            transformed=result.transformed,
            residual=remaining,
        ))
        residual = remaining

    return DiscoveryResult(steps, residual, k, False, redraws)

"""
Path rearrangements on the grid.

All transforms work on grid indices and return new GridPaths on the same
spacing. Times passed in must be grid points; only invariant_transform
moves an off-grid time, and only when asked to.
"""
import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from levy_models.exceptions import DomainError
from minorant_core.paths import ALIGNMENT_TOL, GridPath
from minorant_core.services import Face, MinorantDecomposition, convex_minorant, face_containing
from minorant_core.services.geometry import VERTEX_TOL, argmin


@dataclass(frozen=True, eq=False)
class TransformResult:
    face: Face
    transformed: GridPath
    uniform_length: float
    cut: float


def _require_origin(path: GridPath):
    if path.values[0] != 0.0:
        raise DomainError(f"Transforms need a path starting at 0, got {path.values[0]}")


def _ordered_indices(path: GridPath, u1: float, u2: float, u3: float) -> Tuple[int, int, int]:
    a, b, c = path.index_of(u1), path.index_of(u2), path.index_of(u3)
    if not a <= b <= c or a == c:
        raise DomainError(f"Need u1 <= u2 <= u3 with u1 < u3, got ({u1}, {u2}, {u3})")
    return a, b, c


def _rearrange(f: np.ndarray, a: int, b: int, c: int, jump: float) -> np.ndarray:
    """
    Post-b piece first, then the (a, b) piece, then the pre-a piece; unchanged after c.

    ``jump`` is the rise over [a, c] attached to the moved pieces: the path
    increment f[c] - f[a] for the plain rearrangement, the minorant rise
    for the vertex-anchored one.
    """
    n = f.size - 1
    k = np.arange(n + 1)
    first = f[np.clip(b + k, 0, n)] - f[b]
    middle = jump + f[np.clip(a + k - (c - b), 0, n)] - f[b]
    last = jump + f[np.clip(k - (c - a), 0, n)]
    return np.select([k >= c, k < c - b, k <= c - a], [f, first, middle], last)


def three_point_transform(path: GridPath, u1: float, u2: float, u3: float) -> GridPath:
    _require_origin(path)
    a, b, c = _ordered_indices(path, u1, u2, u3)
    f = path.values
    return GridPath(path.t0, path.dt, _rearrange(f, a, b, c, f[c] - f[a]))


def _vertex_value(dec: MinorantDecomposition, t: float) -> float:
    times = dec.vertex_times
    hits = np.flatnonzero(np.abs(times - t) <= VERTEX_TOL * max(1.0, abs(dec.end)))
    if hits.size == 0:
        raise DomainError(f"Time {t} is not a vertex of the minorant")
    return float(dec.vertex_values[hits[0]])


def psi_transform(path: GridPath, dec: MinorantDecomposition, u1: float, u2: float, u3: float) -> GridPath:
    """Rearrangement anchored on the minorant values at the vertices u1 and u3."""
    _require_origin(path)
    a, b, c = _ordered_indices(path, u1, u2, u3)
    jump = _vertex_value(dec, u3) - _vertex_value(dec, u1)
    return GridPath(path.t0, path.dt, _rearrange(path.values, a, b, c, jump))


def invariant_transform(path: GridPath, u: float, dec: Optional[MinorantDecomposition] = None,
                        snap: bool = False) -> TransformResult:
    """
    Move the face (g, d] containing u to the front of the path.

    The path after u up to d comes first, then the piece from g to u, then
    the path before g; after d nothing changes. ``u`` must be a grid point
    unless ``snap`` is set, in which case the cut is the first grid point
    at or after u while the face is still the one containing u.
    """
    _require_origin(path)
    dec = convex_minorant(path) if dec is None else dec
    face = face_containing(dec, u)
    g, d = path.index_of(face.g), path.index_of(face.d)
    if snap:
        cut = min(max(math.ceil((u - path.t0) / path.dt - ALIGNMENT_TOL), g + 1), d)
    else:
        cut = path.index_of(u)
    transformed = psi_transform(path, dec, face.g, path.time_at(cut), face.d)
    return TransformResult(face=face, transformed=transformed, uniform_length=face.length, cut=path.time_at(cut))


def vervaat(path: GridPath) -> GridPath:
    """
    Cyclic shift of the increments so the path starts at its last minimum.

    The result is nonnegative only when the path ends no lower than it
    starts, so paths ending below their start are rejected.
    """
    f = path.values
    n = path.n_steps
    if f[n] < f[0] - VERTEX_TOL * path.scale:
        raise DomainError(f"Vervaat needs a path ending at or above its start, got {f[0]} -> {f[n]}")
    rho = path.index_of(argmin(path)[0])
    j = np.arange(n + 1)
    head = f[np.clip(rho + j, 0, n)] - f[rho]
    tail = (f[n] - f[rho]) + (f[np.clip(rho + j - n, 0, n)] - f[0])
    return GridPath(0.0, path.dt, np.where(j <= n - rho, head, tail))


def knight_bridge(path: GridPath, s_start: float, s_end: float) -> GridPath:
    """Segment of the path with its chord removed: zero at both ends."""
    s, e = path.index_of(s_start), path.index_of(s_end)
    if not s < e:
        raise DomainError(f"Bridge needs s_start < s_end, got ({s_start}, {s_end})")
    local = path.values[s:e + 1] - path.values[s]
    j = np.arange(e - s + 1)
    return GridPath(0.0, path.dt, local - (j / (e - s)) * local[-1])

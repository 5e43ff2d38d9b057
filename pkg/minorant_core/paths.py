"""
Uniform-grid path representation.

A GridPath holds the values of a path at t0 + k * dt for k = 0..n. Every
path, minorant excursion, bridge and transformed path in the project is
one of these.

Paths of a subordinator may also carry ``log_steps``, the logs of their
positive increments, for steps too small to survive as floats.
"""
from dataclasses import dataclass, field
from typing import Iterable, List, Optional, Tuple

import numpy as np

from levy_models.exceptions import AlignmentError, DomainError, NumericError

ALIGNMENT_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class GridPath:
    t0: float
    dt: float
    values: np.ndarray = field(repr=False)
    log_steps: Optional[np.ndarray] = field(default=None, repr=False)

    def __post_init__(self):
        values = np.array(self.values, dtype=float)
        if values.ndim != 1 or values.size < 2:
            raise DomainError(f"A grid path needs at least two values, got shape {values.shape}")
        if not (np.isfinite(self.dt) and self.dt > 0):
            raise DomainError(f"Grid spacing must be positive, got {self.dt}")
        if not np.isfinite(self.t0):
            raise DomainError(f"Start time must be finite, got {self.t0}")
        bad = np.flatnonzero(~np.isfinite(values))
        if bad.size:
            raise NumericError(f"Path value at index {bad[0]} is not finite", step=int(bad[0]))
        values.setflags(write=False)
        object.__setattr__(self, 't0', float(self.t0))
        object.__setattr__(self, 'dt', float(self.dt))
        object.__setattr__(self, 'values', values)
        if self.log_steps is not None:
            log_steps = np.array(self.log_steps, dtype=float)
            if log_steps.shape != (values.size - 1,):
                raise DomainError(f"Expected {values.size - 1} log steps, got shape {log_steps.shape}")
            bad = np.flatnonzero(~np.isfinite(log_steps))
            if bad.size:
                raise NumericError(f"Log step {bad[0]} is not finite", step=int(bad[0]))
            log_steps.setflags(write=False)
            object.__setattr__(self, 'log_steps', log_steps)

    @classmethod
    def from_increments(cls, increments, dt: float, t0: float = 0.0) -> 'GridPath':
        increments = np.asarray(increments, dtype=float)
        return cls(t0, dt, np.concatenate(([0.0], np.cumsum(increments))))

    @property
    def n_steps(self) -> int:
        return self.values.size - 1

    @property
    def duration(self) -> float:
        return self.n_steps * self.dt

    @property
    def end(self) -> float:
        return self.t0 + self.duration

    @property
    def times(self) -> np.ndarray:
        return self.t0 + self.dt * np.arange(self.values.size)

    @property
    def terminal(self) -> float:
        return float(self.values[-1])

    @property
    def scale(self) -> float:
        """Magnitude used to make tolerances relative."""
        return max(1.0, float(np.max(np.abs(self.values))))

    def increments(self) -> np.ndarray:
        return np.diff(self.values)

    def index_of(self, t: float) -> int:
        """Grid index of time t; raises AlignmentError when t is off the grid."""
        position = (float(t) - self.t0) / self.dt
        index = int(round(position))
        if abs(position - index) > ALIGNMENT_TOL * max(1.0, abs(position)):
            raise AlignmentError(f"Time {t} is not on the grid t0={self.t0}, dt={self.dt}")
        if not 0 <= index <= self.n_steps:
            raise AlignmentError(f"Time {t} lies outside [{self.t0}, {self.end}]")
        return index

    def value_at(self, t: float) -> float:
        return float(self.values[self.index_of(t)])

    def time_at(self, index: int) -> float:
        return self.t0 + index * self.dt

    # CSV rows (time, value)

    def to_rows(self) -> List[Tuple[float, float]]:
        return list(zip(self.times.tolist(), self.values.tolist()))

    @classmethod
    def from_rows(cls, rows: Iterable[Tuple[float, float]]) -> 'GridPath':
        rows = [(float(t), float(v)) for t, v in rows]
        if len(rows) < 2:
            raise DomainError("A grid path needs at least two rows")
        times = np.array([t for t, _ in rows])
        spacing = np.diff(times)
        dt = float(times[-1] - times[0]) / (len(rows) - 1)
        if dt <= 0 or np.max(np.abs(spacing - dt)) > ALIGNMENT_TOL * max(1.0, abs(times[-1])):
            raise AlignmentError("Path rows are not on a uniform increasing grid")
        return cls(times[0], dt, np.array([v for _, v in rows]))

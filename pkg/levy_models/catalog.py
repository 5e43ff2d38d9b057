"""
Catalog of Levy process families.

Every family here has continuous marginal laws, i.e. none of them is a
compound Poisson process with drift. Parameters are validated when the
descriptor is built, never when it is sampled.
"""
import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional

from .exceptions import DomainError


class Family(str, Enum):
    BROWNIAN = 'brownian'
    CAUCHY = 'cauchy'
    STABLE = 'stable'
    GAMMA = 'gamma'


@dataclass(frozen=True)
class LevyModel:
    """
    Immutable descriptor of a Levy family.

    Only the fields relevant to ``family`` are meaningful:
    brownian uses ``sigma`` and ``drift``, cauchy uses ``scale``,
    stable uses ``alpha``, ``beta`` and ``scale``, gamma uses none
    (E exp(-q T_t) = (1 + q) ** -t).

    ``scale`` of a stable model is the S1 scale, so Stable(2, b, c) is
    Normal(0, 2 c^2 t) at time t and Stable(1, 0, c) is Cauchy(c).
    """

    family: Family
    sigma: float = 1.0
    drift: float = 0.0
    scale: float = 1.0
    alpha: float = 2.0
    beta: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, 'family', Family(self.family))
        for name in ('sigma', 'drift', 'scale', 'alpha', 'beta'):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise DomainError(f"{name} must be finite, got {value}")
            object.__setattr__(self, name, value)

        if self.family == Family.BROWNIAN and self.sigma <= 0:
            raise DomainError(f"Brownian volatility must be positive, got {self.sigma}")
        if self.family in (Family.CAUCHY, Family.STABLE) and self.scale <= 0:
            raise DomainError(f"{self.family.value} scale must be positive, got {self.scale}")
        if self.family == Family.STABLE:
            if not 0 < self.alpha <= 2:
                raise DomainError(f"Stable index must lie in (0, 2], got {self.alpha}")
            if not -1 <= self.beta <= 1:
                raise DomainError(f"Stable skewness must lie in [-1, 1], got {self.beta}")
            if self.alpha == 1 and self.beta != 0:
                raise DomainError("Stable index 1 is only available without skewness (Cauchy)")

    # Constructors

    @classmethod
    def brownian(cls, sigma: float = 1.0, drift: float = 0.0) -> 'LevyModel':
        return cls(Family.BROWNIAN, sigma=sigma, drift=drift)

    @classmethod
    def cauchy(cls, scale: float = 1.0) -> 'LevyModel':
        return cls(Family.CAUCHY, scale=scale)

    @classmethod
    def stable(cls, alpha: float, beta: float = 0.0, scale: float = 1.0) -> 'LevyModel':
        return cls(Family.STABLE, alpha=alpha, beta=beta, scale=scale)

    @classmethod
    def gamma(cls) -> 'LevyModel':
        return cls(Family.GAMMA)

    # Derived properties

    def canonical(self) -> 'LevyModel':
        """Return the brownian or cauchy model equal in law, when there is one."""
        if self.family == Family.STABLE:
            if self.alpha == 2:
                return LevyModel.brownian(sigma=math.sqrt(2.0) * self.scale, drift=0.0)
            if self.alpha == 1:
                return LevyModel.cauchy(scale=self.scale)
        return self

    @property
    def long_run_slope(self) -> Optional[float]:
        """lim X_t / t when it exists almost surely, else None."""
        if self.family == Family.BROWNIAN:
            return self.drift
        if self.family == Family.GAMMA:
            return 1.0
        if self.family == Family.STABLE:
            if self.alpha > 1:
                return 0.0
            if self.alpha < 1 and self.beta == 1:
                return math.inf
        return None

    @property
    def is_subordinator(self) -> bool:
        if self.family == Family.GAMMA:
            return True
        return self.family == Family.STABLE and self.alpha < 1 and self.beta == 1

    @property
    def label(self) -> str:
        if self.family == Family.BROWNIAN:
            return f"brownian(sigma={self.sigma:g}, drift={self.drift:g})"
        if self.family == Family.CAUCHY:
            return f"cauchy(scale={self.scale:g})"
        if self.family == Family.STABLE:
            return f"stable(alpha={self.alpha:g}, beta={self.beta:g}, scale={self.scale:g})"
        return "gamma"

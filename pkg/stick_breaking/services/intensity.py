"""
Intensity masses of face point processes, by adaptive quadrature.

All masses have the form  integral over t of w(t) P(X_t in [x1, x2]) dt / t.
Finite t-ranges are integrated in log t, which removes the 1/t factor.
"""
import logging
import math
from enum import Enum
from typing import Optional, Tuple

import numpy as np
from django.conf import settings
from scipy import integrate

from levy_models.catalog import LevyModel
from levy_models.exceptions import DomainError, LongRunSlopeUndefinedError, NumericError
from levy_models.services import marginal_cdf

logger = logging.getLogger(__name__)

QUAD_LIMIT = 200
MAX_DOUBLINGS = 40


class Weight(str, Enum):
    EXPONENTIAL = 'exponential'
    BELOW_SLOPE = 'below_slope'
    UNIT = 'unit'


def _epsrel(epsrel: Optional[float]) -> float:
    return getattr(settings, 'MINORANT_QUAD_EPSREL', 1e-6) if epsrel is None else epsrel


def _quad_dt_over_t(density, t1: float, t2: float, epsrel: float) -> float:
    """integral of density(t) dt / t over [t1, t2]."""
    if math.isinf(t2):
        value, _ = integrate.quad(lambda t: density(t) / t, t1, np.inf, epsrel=epsrel, limit=QUAD_LIMIT)
    else:
        value, _ = integrate.quad(
            lambda s: density(math.exp(s)), math.log(t1), math.log(t2), epsrel=epsrel, limit=QUAD_LIMIT,
        )
    if not math.isfinite(value):
        raise NumericError(f"Quadrature over [{t1}, {t2}] did not converge")
    return max(0.0, value)


def _check_t_range(t_range: Tuple[float, float]) -> Tuple[float, float]:
    t1, t2 = float(t_range[0]), float(t_range[1])
    if not t1 > 0:
        raise DomainError(f"The t-range must start above 0, got {t1}")
    if not t2 > t1:
        raise DomainError(f"Empty t-range [{t1}, {t2}]")
    return t1, t2


def intensity_mass(model: LevyModel, t_range: Tuple[float, float], x_range: Tuple[float, float],
                   weight: Weight = Weight.UNIT, theta: Optional[float] = None,
                   slope: Optional[float] = None, epsrel: Optional[float] = None) -> float:
    """
    Mass of the rectangle t_range x x_range.

    Args:
        model: family with a marginal distribution function
        t_range: (t1, t2) with 0 < t1 < t2; t2 may be infinite
        x_range: (x1, x2), infinite bounds allowed
        weight: exp(-theta t), the indicator x < slope * t, or 1
        theta: rate for the exponential weight
        slope: cap for the indicator weight

    Returns:
        float: the intensity mass
    """
    weight = Weight(weight)
    t1, t2 = _check_t_range(t_range)
    x1, x2 = float(x_range[0]), float(x_range[1])
    if x2 < x1:
        raise DomainError(f"Empty x-range [{x1}, {x2}]")
    if x1 == x2:
        return 0.0
    if weight == Weight.EXPONENTIAL and not (theta is not None and theta > 0):
        raise DomainError(f"The exponential weight needs theta > 0, got {theta}")
    if weight == Weight.BELOW_SLOPE and not (slope is not None and math.isfinite(slope)):
        raise DomainError(f"The indicator weight needs a finite slope cap, got {slope}")

    def density(t: float) -> float:
        upper = min(x2, slope * t) if weight == Weight.BELOW_SLOPE else x2
        if upper <= x1:
            return 0.0
        mass = marginal_cdf(model, t, upper) - marginal_cdf(model, t, x1)
        if weight == Weight.EXPONENTIAL:
            mass *= math.exp(-theta * t)
        return mass

    return _quad_dt_over_t(density, t1, t2, _epsrel(epsrel))


def slope_intensity_mass(model: LevyModel, a: float, b: float, t_range: Tuple[float, float] = (1e-12, 1.0),
                         epsrel: Optional[float] = None) -> float:
    """Expected number of faces on [0, 1] with slope in (a, b): integral of P(a t < X_t < b t) dt / t."""
    t1, t2 = _check_t_range(t_range)
    if b <= a:
        return 0.0
    return _quad_dt_over_t(
        lambda t: marginal_cdf(model, t, b * t) - marginal_cdf(model, t, a * t), t1, t2, _epsrel(epsrel),
    )


def discrete_intensity(model: LevyModel, n_steps: int, dt: float, x_range: Tuple[float, float],
                       slopes: bool = False, k_min: int = 1) -> float:
    """
    Walk analogue: expected number of faces of an n-step walk with increment in x_range.

    A face spanning k steps contributes P(S_k in x_range) / k. With
    ``slopes`` the range bounds the face slope instead of its increment;
    faces shorter than ``k_min`` steps are left out.
    """
    if n_steps < 1 or k_min < 1:
        raise DomainError(f"Need 1 <= k_min and 1 <= n_steps, got {k_min} and {n_steps}")
    x1, x2 = x_range
    total = 0.0
    for k in range(k_min, n_steps + 1):
        t = k * dt
        low, high = (x1 * t, x2 * t) if slopes else (x1, x2)
        if high > low:
            total += (marginal_cdf(model, t, high) - marginal_cdf(model, t, low)) / k
    return total


def check_slope_cap(model: LevyModel, slope_cap: float) -> float:
    limit = model.long_run_slope
    if limit is None:
        raise LongRunSlopeUndefinedError(f"{model.label} has no long-run slope")
    if not slope_cap < limit:
        raise DomainError(f"Slope cap {slope_cap} must lie below the long-run slope {limit}")
    return limit


def infinite_horizon_mass(model: LevyModel, slope_cap: float, t_range: Tuple[float, float],
                          epsrel: Optional[float] = None) -> float:
    """Expected number of faces with slope below ``slope_cap`` and length in t_range, on [0, inf)."""
    check_slope_cap(model, slope_cap)
    return intensity_mass(model, t_range, (-math.inf, math.inf), Weight.BELOW_SLOPE,
                          slope=slope_cap, epsrel=epsrel)


def choose_horizon(model: LevyModel, slope_cap: float, t_min: float, tol: float = 0.01,
                   start: float = 1.0) -> float:
    """
    Smallest doubling of ``start`` beyond which the remaining mass is below ``tol`` of the total.
    """
    check_slope_cap(model, slope_cap)
    horizon = max(start, 2.0 * t_min)
    for _ in range(MAX_DOUBLINGS):
        tail = infinite_horizon_mass(model, slope_cap, (horizon, math.inf))
        body = infinite_horizon_mass(model, slope_cap, (t_min, horizon))
        if tail <= tol * (body + tail):
            logger.info(f"Horizon {horizon:g} leaves tail mass {tail:.3g} of {body + tail:.3g}")
            return horizon
        horizon *= 2.0
    raise NumericError(f"No horizon up to {horizon:g} brings the tail mass below {tol}")

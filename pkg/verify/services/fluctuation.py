"""
Fluctuation identities evaluated by quadrature.
"""
import logging
import math
from dataclasses import dataclass

import numpy as np
from django.conf import settings
from scipy import integrate, special

from levy_models.catalog import Family, LevyModel
from levy_models.exceptions import DomainError, NumericError, UnsupportedError
from levy_models.services import marginal_cdf

logger = logging.getLogger(__name__)

SMALL_TIME = 1e-12
DIVERGENCE_LEVEL = 1e-3


@dataclass(frozen=True)
class RogozinIntegral:
    value: float
    diverges: bool
    small_time_probability: float


def rogozin_integral(model: LevyModel, t_min: float = 1e-8) -> RogozinIntegral:
    """
    integral of P(X_t <= 0) / t over [t_min, 1], with a divergence flag.

    The full integral from 0 diverges exactly when P(X_t <= 0) does not
    vanish as t decreases to 0, i.e. when 0 is regular for (-inf, 0).
    """
    if not 0 < t_min < 1:
        raise DomainError(f"t_min must lie in (0, 1), got {t_min}")
    epsrel = getattr(settings, 'MINORANT_QUAD_EPSREL', 1e-6)
    value, _ = integrate.quad(
        lambda s: marginal_cdf(model, math.exp(s), 0.0), math.log(t_min), 0.0, epsrel=epsrel, limit=200,
    )
    probability = marginal_cdf(model, SMALL_TIME, 0.0)
    logger.debug(f"Rogozin integral for {model.label} from {t_min:g}: {value:.6g}, P(X <= 0) near 0: {probability:.3g}")
    return RogozinIntegral(value=max(0.0, value), diverges=probability > DIVERGENCE_LEVEL,
                           small_time_probability=probability)


def pecherskii_rogozin_rhs(model: LevyModel, theta: float, alpha: float, beta: float, slope: float) -> float:
    """
    exp(-integral over t > 0, x < 0 of (1 - exp(-alpha t + beta x)) exp(-theta t) / t P(X_t - slope t in dx) dt)

    Closed-form inner integral, so only Brownian models are accepted.
    """
    model = model.canonical()
    if model.family != Family.BROWNIAN:
        raise UnsupportedError("The minimum transform is only available in closed form for Brownian motion")
    if not theta > 0 or alpha < 0 or beta < 0:
        raise DomainError(f"Need theta > 0 and alpha, beta >= 0, got {theta}, {alpha}, {beta}")
    if alpha == 0 and beta == 0:
        return 1.0
    drift, sigma = model.drift - slope, model.sigma

    def inner(t: float) -> float:
        mu, s = drift * t, sigma * math.sqrt(t)
        below = special.ndtr(-mu / s)
        weighted = math.exp(-alpha * t + beta * mu + 0.5 * beta ** 2 * s ** 2
                            + special.log_ndtr((-mu - beta * s ** 2) / s))
        return math.exp(-theta * t) * (below - weighted)

    # t = w^2 turns dt / t into 2 dw / w and removes the square-root singularity at 0
    integrand = lambda w: 2.0 * inner(w * w) / w
    epsrel = getattr(settings, 'MINORANT_QUAD_EPSREL', 1e-6)
    head, _ = integrate.quad(integrand, 0.0, 1.0, epsrel=epsrel, limit=200)
    tail, _ = integrate.quad(integrand, 1.0, np.inf, epsrel=epsrel, limit=200)
    exponent = head + tail
    if not math.isfinite(exponent):
        raise NumericError("Quadrature of the minimum transform did not converge")
    return math.exp(-exponent)

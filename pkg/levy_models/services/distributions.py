"""
Closed-form marginal distribution functions P(X_t <= x).
"""
import numpy as np
from scipy import special

from ..catalog import Family, LevyModel
from ..exceptions import DomainError, UnsupportedError


def has_marginal_cdf(model: LevyModel) -> bool:
    model = model.canonical()
    if model.family != Family.STABLE:
        return True
    return model.alpha == 0.5 and model.beta == 1.0


def marginal_cdf(model: LevyModel, t: float, x):
    """
    P(X_t <= x) for scalar or array ``x``.

    Stable laws are covered for index 2 (Gaussian), 1 (Cauchy) and the
    one-sided index 1/2 law; any other index raises UnsupportedError.
    """
    if not t > 0:
        raise DomainError(f"Time must be positive, got {t}")
    original = model
    model = model.canonical()
    x = np.asarray(x, dtype=float)

    if model.family == Family.BROWNIAN:
        p = special.ndtr((x - model.drift * t) / (model.sigma * np.sqrt(t)))
    elif model.family == Family.CAUCHY:
        p = 0.5 + np.arctan(x / (model.scale * t)) / np.pi
    elif model.family == Family.GAMMA:
        p = special.gammainc(t, np.maximum(x, 0.0))
    elif has_marginal_cdf(model):
        with np.errstate(divide='ignore', invalid='ignore'):
            positive = np.where(x > 0, x, 1.0)
            p = np.where(x > 0, special.erfc(t * np.sqrt(model.scale / (2.0 * positive))), 0.0)
    else:
        raise UnsupportedError(f"No marginal distribution function for {original.label}")

    return float(p) if np.ndim(p) == 0 else p

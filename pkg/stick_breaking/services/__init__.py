# Stick-breaking services
from .sticks import (
    StickBreak,
    FacePoint,
    stick_break,
    theorem1_sample,
    minorant_from_points,
    points_from_arrays,
    points_to_arrays,
    default_sticks,
)
from .intensity import (
    Weight,
    intensity_mass,
    slope_intensity_mass,
    discrete_intensity,
    infinite_horizon_mass,
    choose_horizon,
)
from .ppp import ppp_exponential_horizon, infinite_horizon_points

__all__ = [
    'StickBreak',
    'FacePoint',
    'stick_break',
    'theorem1_sample',
    'minorant_from_points',
    'points_from_arrays',
    'points_to_arrays',
    'default_sticks',
    'Weight',
    'intensity_mass',
    'slope_intensity_mass',
    'discrete_intensity',
    'infinite_horizon_mass',
    'choose_horizon',
    'ppp_exponential_horizon',
    'infinite_horizon_points',
]

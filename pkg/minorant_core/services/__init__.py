# Minorant services
from .minorant import (
    Face,
    MinorantDecomposition,
    convex_minorant,
    brute_force_faces,
    hull_indices,
    log_hull_indices,
)
from .geometry import (
    StepFunction,
    face_containing,
    excursion,
    right_derivative,
    slope_passage,
    ranked_lengths,
    argmin,
    contact_fraction,
)

__all__ = [
    'Face',
    'MinorantDecomposition',
    'convex_minorant',
    'brute_force_faces',
    'hull_indices',
    'log_hull_indices',
    'StepFunction',
    'face_containing',
    'excursion',
    'right_derivative',
    'slope_passage',
    'ranked_lengths',
    'argmin',
    'contact_fraction',
]

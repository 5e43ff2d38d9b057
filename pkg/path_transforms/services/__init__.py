# Path transform services
from .transforms import (
    TransformResult,
    three_point_transform,
    psi_transform,
    invariant_transform,
    vervaat,
    knight_bridge,
)
from .discovery import DiscoveryStep, DiscoveryResult, recursive_face_discovery

__all__ = [
    'TransformResult',
    'three_point_transform',
    'psi_transform',
    'invariant_transform',
    'vervaat',
    'knight_bridge',
    'DiscoveryStep',
    'DiscoveryResult',
    'recursive_face_discovery',
]

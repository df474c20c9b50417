from .base import Augmentation, build_augmentation
from .masking import edge_mask, feature_mask, node_mask, path_mask
from .models import GraphView
from .schemas import AugmentSpec

__all__ = [
    "Augmentation", "AugmentSpec", "GraphView", "build_augmentation",
    "edge_mask", "path_mask", "node_mask", "feature_mask",
]

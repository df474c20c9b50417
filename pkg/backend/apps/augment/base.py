"""
Augmentation strategies behind one interface, selected by AugmentSpec.kind.
"""

from abc import ABC, abstractmethod
from typing import Dict, Optional, Type

import numpy as np

from ..core.exceptions import ConfigError, ContractError
from ..graph import Graph
from ..tensor import Tensor
from .masking import edge_mask, feature_mask, node_mask, path_mask
from .models import GraphView
from .schemas import AugmentSpec


class Augmentation(ABC):
    """Abstract base class for all view augmentations."""

    def __init__(self, spec: AugmentSpec):
        self.spec = spec

    @abstractmethod
    def apply(self, g: Graph, rng: np.random.Generator,
              mask_token: Optional[Tensor] = None) -> GraphView:
        """Produce one view of `g`."""
        pass

    @property
    def needs_mask_token(self) -> bool:
        return False


class NoAugmentation(Augmentation):
    def apply(self, g, rng, mask_token=None):
        return GraphView.of(g)


class EdgeMasking(Augmentation):
    def apply(self, g, rng, mask_token=None):
        return edge_mask(g, self.spec.p, rng)


class PathMasking(Augmentation):
    def apply(self, g, rng, mask_token=None):
        return path_mask(g, self.spec.root_fraction, self.spec.walk_len, rng)


class NodeMasking(Augmentation):
    def apply(self, g, rng, mask_token=None):
        return node_mask(g, self.spec.p, rng)


class FeatureMasking(Augmentation):
    @property
    def needs_mask_token(self) -> bool:
        return True

    def apply(self, g, rng, mask_token=None):
        if mask_token is None:
            raise ContractError("feature masking needs a mask token")
        return feature_mask(g, self.spec.p, mask_token, rng)


AUGMENTATIONS: Dict[str, Type[Augmentation]] = {
    "none": NoAugmentation,
    "edge_mask": EdgeMasking,
    "path_mask": PathMasking,
    "node_mask": NodeMasking,
    "feature_mask": FeatureMasking,
}


def build_augmentation(spec: AugmentSpec) -> Augmentation:
    try:
        return AUGMENTATIONS[spec.kind](spec)
    except KeyError:
        raise ConfigError("kind", f"unknown augmentation '{spec.kind}'") from None

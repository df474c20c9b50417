"""
GraphView: an augmented graph plus the record of what was masked.
"""

from dataclasses import dataclass, field
from functools import cached_property
from typing import Tuple

import numpy as np

from ..graph import Graph, gcn_normalize_edges, mean_adjacency
from ..tensor import SparseMatrix, Tensor


def _empty_edges() -> np.ndarray:
    return np.zeros((0, 2), dtype=np.int64)


def _empty_nodes() -> np.ndarray:
    return np.zeros(0, dtype=np.int64)


@dataclass(frozen=True, eq=False)
class GraphView:
    """
    visible_edges and masked_edges partition base.edges. Feature rows of
    nodes outside masked_nodes are the base rows, bit for bit.
    """

    base: Graph
    visible_edges: np.ndarray
    masked_edges: np.ndarray = field(default_factory=_empty_edges)
    features: Tensor = None
    masked_nodes: np.ndarray = field(default_factory=_empty_nodes)
    dropped_nodes: np.ndarray = field(default_factory=_empty_nodes)
    kind: str = "none"

    def __post_init__(self):
        if self.features is None:
            object.__setattr__(self, "features", self.base.features)

    @classmethod
    def of(cls, g: Graph) -> "GraphView":
        """Unaugmented view aliasing `g`."""
        return cls(base=g, visible_edges=g.edges)

    @property
    def n(self) -> int:
        return self.base.n

    @property
    def is_structurally_masked(self) -> bool:
        return self.masked_edges.shape[0] > 0

    @property
    def is_feature_masked(self) -> bool:
        return self.masked_nodes.size > 0

    @cached_property
    def normalized_adj(self) -> SparseMatrix:
        return gcn_normalize_edges(self.n, self.visible_edges)

    @cached_property
    def mean_adj(self) -> SparseMatrix:
        return mean_adjacency(self.n, self.visible_edges)

    @cached_property
    def attention_index(self) -> Tuple[np.ndarray, np.ndarray]:
        """(target, source) pairs over visible edges in both directions plus self-loops, grouped by target."""
        loops = np.arange(self.n, dtype=np.int64)
        targets = np.concatenate([self.visible_edges[:, 0], self.visible_edges[:, 1], loops])
        sources = np.concatenate([self.visible_edges[:, 1], self.visible_edges[:, 0], loops])
        order = np.lexsort((sources, targets))
        return targets[order], sources[order]

    def __repr__(self):
        return (f"GraphView(kind={self.kind}, visible={self.visible_edges.shape[0]}, "
                f"masked={self.masked_edges.shape[0]}, masked_nodes={self.masked_nodes.size})")

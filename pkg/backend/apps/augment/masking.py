"""
Masking augmentations. Each takes an explicit RNG and returns a GraphView
recording what was hidden; edges are masked as undirected units.
"""

import logging
import math

import numpy as np

from ..core.exceptions import ContractError, DimensionError
from ..graph import Graph
from ..tensor import Tensor, ops
from .models import GraphView

logger = logging.getLogger(__name__)


def _check_ratio(p: float, name: str = "p") -> None:
    if not 0.0 <= p <= 1.0:
        raise ContractError(f"{name} must be in [0, 1], got {p}")


def _split_edges(g: Graph, masked: np.ndarray, kind: str, **extra) -> GraphView:
    return GraphView(base=g, visible_edges=g.edges[~masked], masked_edges=g.edges[masked],
                     kind=kind, **extra)


def edge_mask(g: Graph, p: float, rng: np.random.Generator) -> GraphView:
    """Hide each edge independently with probability p."""
    _check_ratio(p)
    masked = rng.random(g.num_edges) < p
    return _split_edges(g, masked, "edge_mask")


def path_mask(g: Graph, root_fraction: float, walk_len: int,
              rng: np.random.Generator) -> GraphView:
    """
    Hide the edges traversed by random walks of `walk_len` steps started from
    ceil(root_fraction * n) distinct roots. Walks may revisit nodes and stop
    early at isolated nodes.
    """
    if not 0.0 < root_fraction <= 1.0:
        raise ContractError(f"root_fraction must be in (0, 1], got {root_fraction}")
    if walk_len < 1:
        raise ContractError(f"walk_len must be >= 1, got {walk_len}")

    num_roots = min(g.n, math.ceil(root_fraction * g.n))
    roots = rng.choice(g.n, size=num_roots, replace=False)
    neighbors = g.neighbors()
    edge_keys = g.edge_keys()
    masked = np.zeros(g.num_edges, dtype=bool)

    for root in roots:
        current = int(root)
        for _ in range(walk_len):
            nbrs = neighbors[current]
            if nbrs.size == 0:
                break
            nxt = int(nbrs[rng.integers(nbrs.size)])
            lo, hi = min(current, nxt), max(current, nxt)
            masked[np.searchsorted(edge_keys, lo * g.n + hi)] = True
            current = nxt

    return _split_edges(g, masked, "path_mask")


def node_mask(g: Graph, p: float, rng: np.random.Generator) -> GraphView:
    """Drop each node with probability p: all its incident edges are hidden."""
    _check_ratio(p)
    dropped = rng.random(g.n) < p
    masked = dropped[g.edges[:, 0]] | dropped[g.edges[:, 1]]
    return _split_edges(g, masked, "node_mask", dropped_nodes=np.flatnonzero(dropped))


def feature_mask(g: Graph, p: float, mask_token: Tensor, rng: np.random.Generator) -> GraphView:
    """
    Replace the feature row of each node, independently with probability p,
    by `mask_token`. Gradient reaches the token through every masked row.
    """
    _check_ratio(p)
    if mask_token.shape != (1, g.feature_dim):
        raise DimensionError("feature_mask", mask_token.shape, (1, g.feature_dim))

    selected = np.flatnonzero(rng.random(g.n) < p)
    if selected.size == 0:
        return GraphView(base=g, visible_edges=g.edges, kind="feature_mask")

    kept = g.features.data.copy()
    kept[selected] = 0.0
    tokens = ops.gather_rows(mask_token, np.zeros(selected.size, dtype=np.int64))
    features = ops.add(Tensor(kept), ops.scatter_add_rows(tokens, selected, g.n))
    return GraphView(base=g, visible_edges=g.edges, features=features,
                     masked_nodes=selected, kind="feature_mask")

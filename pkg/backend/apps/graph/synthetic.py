"""
Stochastic block model generator for synthetic benchmarks.
"""

import logging
from typing import Optional, Sequence

import numpy as np

from ..core.exceptions import ContractError
from ..core.utils import RngStreams
from .models import Graph

logger = logging.getLogger(__name__)


def generate_synthetic(blocks: int, sizes: Sequence[int], p_in: float, p_out: float,
                       feature_dim: Optional[int] = None, noise: float = 0.0,
                       seed: int = 0) -> Graph:
    """
    Planted-partition graph: pairs inside a block are linked with probability
    p_in, pairs across blocks with p_out. Features are the one-hot block id
    (zero-padded to `feature_dim`) plus N(0, noise^2) noise; labels are block ids.
    """
    if not 0.0 <= p_out < p_in <= 1.0:
        raise ContractError(f"need 0 <= p_out < p_in <= 1, got p_in={p_in}, p_out={p_out}")
    sizes = [int(s) for s in sizes]
    if blocks < 1 or len(sizes) != blocks or min(sizes) < 1:
        raise ContractError(f"{blocks} blocks need {blocks} positive sizes, got {sizes}")
    feature_dim = blocks if feature_dim is None else int(feature_dim)
    if feature_dim < blocks:
        raise ContractError(f"feature_dim {feature_dim} < number of blocks {blocks}")
    if noise < 0:
        raise ContractError(f"noise must be >= 0, got {noise}")

    rng = RngStreams.fresh(seed, "synthetic")
    labels = np.repeat(np.arange(blocks), sizes)
    n = labels.size

    prob = np.where(labels[:, None] == labels[None, :], p_in, p_out)
    draws = rng.random((n, n))
    upper = np.triu(draws < prob, k=1)
    edges = np.argwhere(upper)

    features = np.zeros((n, feature_dim))
    features[np.arange(n), labels] = 1.0
    if noise > 0:
        features += rng.normal(0.0, noise, size=features.shape)

    graph = Graph.from_edges(n, edges, features, labels=labels, num_classes=blocks)
    logger.debug(f"SBM: {blocks} blocks, n={n}, edges={graph.num_edges}")
    return graph

"""
Node and link splits, pure functions of (graph, fractions, seed).
"""

import logging
from typing import Sequence, Tuple

import numpy as np

from ..core.exceptions import CapacityError, ContractError
from ..core.utils import RngStreams
from .models import Graph, LinkSplit, NodeSplit

logger = logging.getLogger(__name__)

MIN_LINK_SPLIT_EDGES = 20


def _round_half_up(x: float) -> int:
    return int(np.floor(x + 0.5))


def _check_fractions(fractions: Sequence[float]) -> Tuple[float, float, float]:
    if len(fractions) != 3 or any(f < 0 for f in fractions):
        raise ContractError(f"split fractions must be three nonnegative numbers, got {fractions}")
    if sum(fractions) > 1.0 + 1e-9:
        raise ContractError(f"split fractions sum to {sum(fractions)} > 1")
    return float(fractions[0]), float(fractions[1]), float(fractions[2])


def node_split(g: Graph, fractions: Sequence[float] = (0.8, 0.1, 0.1), seed: int = 0) -> NodeSplit:
    """Random train/val/test node split; a public split on the graph wins."""
    g.require_labels()
    if g.public_split is not None:
        return NodeSplit(*(np.asarray(g.public_split[k], dtype=np.int64)
                           for k in ("train", "val", "test")))

    f_train, f_val, f_test = _check_fractions(fractions)
    n_val = max(1, _round_half_up(f_val * g.n))
    n_test = max(1, _round_half_up(f_test * g.n))
    n_train = min(max(1, _round_half_up(f_train * g.n)), g.n - n_val - n_test)
    if n_train < 1:
        raise ContractError(f"cannot split {g.n} nodes into three nonempty sets")

    perm = RngStreams.fresh(seed, "split.nodes").permutation(g.n)
    return NodeSplit(
        train=np.sort(perm[:n_train]),
        val=np.sort(perm[n_train:n_train + n_val]),
        test=np.sort(perm[n_train + n_val:n_train + n_val + n_test]),
    )


def sample_non_edges(g: Graph, count: int, rng: np.random.Generator) -> np.ndarray:
    """
    `count` distinct u < v pairs that are not edges of `g`, in draw order.

    Exact: rejection sampling on sparse graphs, enumeration when the
    complement is small.
    """
    total = g.n * (g.n - 1) // 2
    available = total - g.num_edges
    if count > available:
        raise CapacityError(f"need {count} non-edges, graph has only {available}")
    if count == 0:
        return np.zeros((0, 2), dtype=np.int64)
    edge_keys = g.edge_keys()

    if count * 2 > available:
        u, v = np.triu_indices(g.n, 1)
        keys = u * g.n + v
        keys = keys[~np.isin(keys, edge_keys)]
        chosen = rng.choice(keys, size=count, replace=False)
        return np.column_stack([chosen // g.n, chosen % g.n])

    picked = np.zeros(0, dtype=np.int64)
    while picked.size < count:
        batch = max(2 * (count - picked.size), 64)
        a = rng.integers(0, g.n, batch)
        b = rng.integers(0, g.n, batch)
        lo, hi = np.minimum(a, b), np.maximum(a, b)
        keys = (lo * g.n + hi)[lo != hi]
        keys = keys[~np.isin(keys, edge_keys)]
        merged = np.concatenate([picked, keys])
        _, first = np.unique(merged, return_index=True)
        picked = merged[np.sort(first)]
    picked = picked[:count]
    return np.column_stack([picked // g.n, picked % g.n])


def link_split(g: Graph, fractions: Sequence[float] = (0.85, 0.05, 0.10), seed: int = 0) -> LinkSplit:
    """Partition edges into train/val/test positives and draw matched negatives."""
    _, f_val, f_test = _check_fractions(fractions)
    m = g.num_edges
    if m < MIN_LINK_SPLIT_EDGES:
        raise CapacityError(f"link split needs at least {MIN_LINK_SPLIT_EDGES} edges, graph has {m}")

    n_val = _round_half_up(f_val * m)
    n_test = _round_half_up(f_test * m)
    rng = RngStreams.fresh(seed, "split.links")
    perm = rng.permutation(m)
    val_pos = g.edges[np.sort(perm[:n_val])]
    test_pos = g.edges[np.sort(perm[n_val:n_val + n_test])]
    train_edges = g.edges[np.sort(perm[n_val + n_test:])]

    negatives = sample_non_edges(g, n_val + n_test, rng)
    split = LinkSplit(
        train_edges=train_edges,
        val_pos=val_pos,
        val_neg=negatives[:n_val],
        test_pos=test_pos,
        test_neg=negatives[n_val:],
    )
    logger.debug(f"Link split: {split.counts()}")
    return split

"""
Contrastive and reconstruction losses, each returning a 1x1 Tensor.
"""

from typing import Optional

import numpy as np

from ..core.exceptions import ContractError, DimensionError
from ..tensor import Tensor, ops


def bce_edge_loss(pos_scores: Tensor, neg_scores: Tensor) -> Tensor:
    """
    mean_pos[-log sigmoid(s)] + mean_neg[-log(1 - sigmoid(s))] on raw scores,
    written as softplus(-s) and softplus(s).
    """
    if pos_scores.rows == 0 or neg_scores.rows == 0:
        raise ContractError("bce_edge_loss needs nonempty positive and negative scores")
    pos_term = ops.mean_all(ops.softplus(ops.scale(pos_scores, -1.0)))
    neg_term = ops.mean_all(ops.softplus(neg_scores))
    return ops.add(pos_term, neg_term)


def mse_feature_loss(pred: Tensor, target: Tensor, coords: Optional[np.ndarray] = None) -> Tensor:
    """Mean squared error over the coordinates selected by `coords` (default: all)."""
    if pred.shape != target.shape:
        raise DimensionError("mse_feature_loss", pred.shape, target.shape)
    diff = ops.sub(pred, target)
    squared = ops.mul(diff, diff)
    if coords is None:
        if squared.data.size == 0:
            raise ContractError("mse_feature_loss over an empty coordinate set")
        return ops.mean_all(squared)
    mask = np.asarray(coords, dtype=bool)
    if mask.shape != pred.shape:
        raise DimensionError("mse_feature_loss", pred.shape, mask.shape)
    count = int(mask.sum())
    if count == 0:
        raise ContractError("mse_feature_loss over an empty coordinate set")
    return ops.scale(ops.sum_all(ops.mul(squared, Tensor(mask.astype(np.float64)))), 1.0 / count)


def sce_loss(pred: Tensor, target: Tensor, gamma: float = 2.0) -> Tensor:
    """mean_i (1 - cos(pred_i, target_i))^gamma."""
    if pred.shape != target.shape:
        raise DimensionError("sce_loss", pred.shape, target.shape)
    if gamma < 1:
        raise ContractError(f"sce gamma must be >= 1, got {gamma}")
    # relu absorbs cos rounding just above 1
    distance = ops.relu(ops.shift(ops.scale(ops.rowwise_cosine(pred, target), -1.0), 1.0))
    return ops.mean_all(ops.power(distance, gamma))


def _similarity(left: Tensor, right: Tensor, temperature: float) -> Tensor:
    if left.shape != right.shape:
        raise DimensionError("info_nce", left.shape, right.shape)
    if left.rows < 2:
        raise ContractError(f"in-batch contrast needs at least 2 rows, got {left.rows}")
    if temperature <= 0:
        raise ContractError(f"temperature must be > 0, got {temperature}")
    sim = ops.matmul(ops.normalize_rows(left), ops.transpose(ops.normalize_rows(right)))
    return ops.scale(sim, 1.0 / temperature)


def _directional(sim: Tensor, positives: Tensor) -> Tensor:
    """mean_i [logsumexp_j S_ij - S_ii]."""
    return ops.mean_all(ops.sub(ops.logsumexp_rows(sim), positives))


def info_nce(left: Tensor, right: Tensor, temperature: float = 0.5) -> Tensor:
    """Symmetric in-batch InfoNCE with cosine similarity over temperature."""
    sim = _similarity(left, right, temperature)
    positives = ops.scale(ops.rowwise_cosine(left, right), 1.0 / temperature)
    forward = _directional(sim, positives)
    backward_dir = _directional(ops.transpose(sim), positives)
    return ops.scale(ops.add(forward, backward_dir), 0.5)


def simcse(left: Tensor, right: Tensor, temperature: float = 0.5) -> Tensor:
    """InfoNCE in the left-to-right direction only."""
    sim = _similarity(left, right, temperature)
    positives = ops.scale(ops.rowwise_cosine(left, right), 1.0 / temperature)
    return _directional(sim, positives)

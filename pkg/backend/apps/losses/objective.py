"""
Dispatch from a loss config to the scalar training objective.
"""

from typing import Any

from ..core.exceptions import ContractError
from ..tensor import Tensor
from .functional import bce_edge_loss, info_nce, mse_feature_loss, sce_loss, simcse
from .schemas import LossConfig


def evaluate_objective(cfg: LossConfig, contrast: Any, decoder: Any, params: Any) -> Tensor:
    """
    `contrast` carries left/right (and, for bce, neg_left/neg_right)
    representations; `decoder` scores edge pairs for bce.
    """
    if cfg.kind == "bce":
        if contrast.neg_left is None or contrast.neg_right is None:
            raise ContractError("bce objective needs negative pairs")
        pos = decoder.score_pairs(contrast.left, contrast.right, params)
        neg = decoder.score_pairs(contrast.neg_left, contrast.neg_right, params)
        return bce_edge_loss(pos, neg)
    if cfg.kind == "mse":
        return mse_feature_loss(contrast.left, contrast.right)
    if cfg.kind == "sce":
        return sce_loss(contrast.left, contrast.right, cfg.sce_gamma)
    if cfg.kind == "infonce":
        return info_nce(contrast.left, contrast.right, cfg.temperature)
    if cfg.kind == "simcse":
        return simcse(contrast.left, contrast.right, cfg.temperature)
    raise ContractError(f"unknown loss '{cfg.kind}'")

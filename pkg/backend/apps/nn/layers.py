"""
Message-passing layers: GCN, GraphSAGE (mean aggregator) and GAT.
"""

from typing import Optional, Sequence, Tuple

import numpy as np

from ..core.exceptions import ContractError, DimensionError
from ..tensor import SparseMatrix, Tensor, ops

LEAKY_SLOPE = 0.2


def activate(x: Tensor, act: str) -> Tensor:
    if act == "relu":
        return ops.relu(x)
    if act == "none":
        return x
    raise ContractError(f"unknown activation '{act}'")


def _maybe_bias(x: Tensor, bias: Optional[Tensor]) -> Tensor:
    return x if bias is None else ops.add_row(x, bias)


def linear(x: Tensor, weight: Tensor, bias: Optional[Tensor] = None) -> Tensor:
    return _maybe_bias(ops.matmul(x, weight), bias)


def gcn_layer(adj: SparseMatrix, h: Tensor, weight: Tensor, act: str = "relu",
              bias: Optional[Tensor] = None) -> Tensor:
    """act(A H W + b)."""
    if adj.cols != h.rows:
        raise DimensionError("gcn_layer", adj.shape, h.shape)
    return activate(_maybe_bias(ops.spmm(adj, ops.matmul(h, weight)), bias), act)


def sage_layer(mean_adj: SparseMatrix, h: Tensor, weight_self: Tensor, weight_neigh: Tensor,
               act: str = "relu", bias: Optional[Tensor] = None) -> Tensor:
    """act(H W_self + mean_{neighbors}(H) W_neigh + b); isolated nodes aggregate zeros."""
    if mean_adj.cols != h.rows:
        raise DimensionError("sage_layer", mean_adj.shape, h.shape)
    own = ops.matmul(h, weight_self)
    neigh = ops.matmul(ops.spmm(mean_adj, h), weight_neigh)
    return activate(_maybe_bias(ops.add(own, neigh), bias), act)


def gat_head(index: Tuple[np.ndarray, np.ndarray], h: Tensor, weight: Tensor,
             att_src: Tensor, att_dst: Tensor) -> Tuple[Tensor, Tensor]:
    """
    One attention head over (target, source) pairs that include self-loops.

    e_uv = leaky_relu(a_dst . W h_u + a_src . W h_v), alpha = softmax over each
    target's sources. Returns (sum_v alpha_uv W h_v, alpha column).
    """
    targets, sources = index
    wh = ops.matmul(h, weight)
    if att_src.shape != (wh.cols, 1) or att_dst.shape != (wh.cols, 1):
        raise DimensionError("gat_layer", att_src.shape, (wh.cols, 1))
    score_dst = ops.matmul(wh, att_dst)
    score_src = ops.matmul(wh, att_src)
    logits = ops.leaky_relu(ops.add(ops.gather_rows(score_dst, targets),
                                    ops.gather_rows(score_src, sources)), LEAKY_SLOPE)
    alpha = ops.segment_softmax(logits, targets, h.rows)
    messages = ops.scale_rows(ops.gather_rows(wh, sources), alpha)
    return ops.scatter_add_rows(messages, targets, h.rows), alpha


def gat_layer(index: Tuple[np.ndarray, np.ndarray], h: Tensor,
              heads: Sequence[Tuple[Tensor, Tensor, Tensor]], act: str = "relu",
              bias: Optional[Tensor] = None) -> Tensor:
    """Concatenation of heads, each given as (W, a_src, a_dst)."""
    if not heads:
        raise ContractError("gat_layer needs at least one head")
    outputs = [gat_head(index, h, w, a_src, a_dst)[0] for w, a_src, a_dst in heads]
    out = outputs[0] if len(outputs) == 1 else ops.concat_cols(outputs)
    return activate(_maybe_bias(out, bias), act)


def mlp(x: Tensor, layers: Sequence[Tuple[Tensor, Tensor]], act: str = "relu") -> Tensor:
    """Stack of affine maps; `act` between them, none after the last."""
    for i, (weight, bias) in enumerate(layers):
        x = linear(x, weight, bias)
        if i < len(layers) - 1:
            x = activate(x, act)
    return x

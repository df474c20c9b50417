"""
Supervision pairs and left/right representation assembly.
"""

import logging
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Dict, Optional

import numpy as np

from ..augment import GraphView
from ..core.exceptions import ConfigError, ContractError
from ..graph import Graph
from ..nn import Decoder, EmbeddingStack, ParamStore
from ..tensor import Tensor, ops
from .cases import case_abbreviation
from .schemas import ViewSpec

if TYPE_CHECKING:
    from ..losses.sampling import NegativeSampler

logger = logging.getLogger(__name__)

SYMMETRIC_LOSSES = ("infonce", "simcse")


def _empty_index() -> np.ndarray:
    return np.zeros(0, dtype=np.int64)


@dataclass
class PairBatch:
    """Positive (left_nodes[i], right_nodes[i]) pairs followed by negatives."""

    left_nodes: np.ndarray
    right_nodes: np.ndarray
    neg_left: np.ndarray = field(default_factory=_empty_index)
    neg_right: np.ndarray = field(default_factory=_empty_index)
    source: str = ""

    @property
    def num_positive(self) -> int:
        return int(self.left_nodes.size)

    @property
    def num_negative(self) -> int:
        return int(self.neg_left.size)

    @property
    def is_positive(self) -> np.ndarray:
        return np.concatenate([np.ones(self.num_positive, dtype=bool),
                               np.zeros(self.num_negative, dtype=bool)])

    def positive_pairs(self) -> np.ndarray:
        return np.column_stack([self.left_nodes, self.right_nodes])

    def negative_pairs(self) -> np.ndarray:
        return np.column_stack([self.neg_left, self.neg_right])


@dataclass
class ContrastBatch:
    """Representations the loss consumes: left[i] is contrasted with right[i]."""

    left: Tensor
    right: Tensor
    neg_left: Optional[Tensor] = None
    neg_right: Optional[Tensor] = None


def supervision_pairs(spec: ViewSpec, base: Graph, view_a: GraphView, view_b: GraphView,
                      rng: Optional[np.random.Generator] = None,
                      sampler: Optional["NegativeSampler"] = None, neg_count: Optional[int] = None,
                      embeddings: Optional[np.ndarray] = None, neg_multiplier: int = 1) -> PairBatch:
    """
    same_node: (v, v) for every feature-masked node of A or B, or every node
    when neither view masks features.
    edge_pair: the left view's hidden edges when it masks structure, else the
    edges of `base`; negatives come from `sampler`, `neg_count` of them
    (default: neg_multiplier per positive).
    """
    views = {"A": view_a, "B": view_b}
    if spec.pair_mode == "same_node":
        masked = np.union1d(view_a.masked_nodes, view_b.masked_nodes)
        nodes = masked if masked.size else np.arange(base.n, dtype=np.int64)
        source = "masked_nodes" if masked.size else "all_nodes"
        if nodes.size == 0:
            raise ContractError(f"no positive pairs for view spec {case_abbreviation(spec)}")
        return PairBatch(left_nodes=nodes, right_nodes=nodes, source=source)

    left_view = views[spec.left_graph]
    if left_view.is_structurally_masked:
        positives, source = left_view.masked_edges, "masked_edges"
    else:
        positives, source = base.edges, "graph_edges"
    if positives.shape[0] == 0:
        raise ContractError(f"no positive edges for view spec {case_abbreviation(spec)}")

    batch = PairBatch(left_nodes=positives[:, 0].copy(), right_nodes=positives[:, 1].copy(),
                      source=source)
    if sampler is not None:
        count = neg_count if neg_count is not None else neg_multiplier * positives.shape[0]
        negatives = sampler.sample(base, count, rng, embeddings)
        batch.neg_left, batch.neg_right = negatives[:, 0].copy(), negatives[:, 1].copy()
    return batch


def resolve_decode_right(spec: ViewSpec, loss_kind: str, decoder: Decoder, right_dim: int) -> bool:
    """
    Explicit decode_right wins (and must fit the decoder); otherwise the right
    branch is decoded only for symmetric losses with a feature decoder that
    accepts it.
    """
    feature_decoder = decoder.cfg.kind == "mlp_feature"
    if spec.decode_right is True:
        if feature_decoder and decoder.in_dim != right_dim:
            raise ConfigError("view.decode_right",
                              f"decoder expects width {decoder.in_dim}, right layer has {right_dim}")
        return True
    if spec.decode_right is False:
        return False
    resolved = loss_kind in SYMMETRIC_LOSSES and feature_decoder and decoder.in_dim == right_dim
    if resolved:
        logger.warning(f"decode_right resolved to True for {loss_kind}")
    return resolved


def check_dimensions(spec: ViewSpec, decoder: Decoder, left_dim: int, right_dim: int,
                     decode_right: bool) -> None:
    """Left and right representations must be comparable row by row."""
    left_out = decoder.out_dim if decoder.cfg.kind == "mlp_feature" else left_dim
    right_out = decoder.out_dim if (decode_right and decoder.cfg.kind == "mlp_feature") else right_dim
    if decoder.cfg.kind == "mlp_edge":
        if left_dim != right_dim:
            raise ConfigError("view", f"mlp_edge needs equal widths, got l:{left_dim} r:{right_dim}")
        return
    if left_out != right_out:
        raise ConfigError("decoder", f"left width {left_out} != right width {right_out} for "
                                     f"{case_abbreviation(spec)}")


def left_right(spec: ViewSpec, stack_a: EmbeddingStack, stack_b: EmbeddingStack, batch: PairBatch,
               decoder: Decoder, params: ParamStore, decode_right: bool = False) -> ContrastBatch:
    """
    left = decoder(H_left^(l)[v]); right = H_right^(r)[u], decoded too when
    `decode_right`, detached when spec.stop_gradient_right. `spec` must be
    resolved.
    """
    stacks: Dict[str, EmbeddingStack] = {"A": stack_a, "B": stack_b}
    left_layer = stacks[spec.left_graph].layer(spec.l)
    right_layer = stacks[spec.right_graph].layer(spec.r)

    def left_side(nodes: np.ndarray) -> Tensor:
        return decoder.decode_rows(ops.gather_rows(left_layer, nodes), params)

    def right_side(nodes: np.ndarray) -> Tensor:
        out = ops.gather_rows(right_layer, nodes)
        if decode_right:
            out = decoder.decode_rows(out, params)
        return ops.detach(out) if spec.stop_gradient_right else out

    contrast = ContrastBatch(left=left_side(batch.left_nodes), right=right_side(batch.right_nodes))
    if batch.num_negative:
        contrast.neg_left = left_side(batch.neg_left)
        contrast.neg_right = right_side(batch.neg_right)
    return contrast

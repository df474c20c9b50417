"""
Encoder exposing every intermediate layer H^(0..k).
"""

import logging
from dataclasses import dataclass
from typing import List, Optional

import numpy as np

from ..augment import GraphView
from ..core.exceptions import ContractError, IndexRangeError
from ..tensor import Tensor, ops
from .layers import gat_layer, gcn_layer, sage_layer
from .params import ParamStore
from .schemas import EncoderConfig

logger = logging.getLogger(__name__)

PREFIX = "encoder.layers"


@dataclass
class EmbeddingStack:
    """H^(0) (the view's features) through H^(k); a partial stack stops early."""

    layers: List[Tensor]
    num_layers: int

    @property
    def is_complete(self) -> bool:
        return len(self.layers) == self.num_layers + 1

    def layer(self, index: int) -> Tensor:
        if not 0 <= index <= self.num_layers:
            raise IndexRangeError(f"layer {index} outside [0, {self.num_layers}]")
        if index >= len(self.layers):
            raise ContractError(f"layer {index} was not computed (stack stops at {len(self.layers) - 1})")
        return self.layers[index]

    def __len__(self) -> int:
        return len(self.layers)


class Encoder:
    """GCN, SAGE or GAT stack configured by EncoderConfig."""

    def __init__(self, cfg: EncoderConfig):
        if cfg.input_dim is None:
            raise ContractError("EncoderConfig.input_dim must be resolved before building an encoder")
        self.cfg = cfg

    def _name(self, layer: int, part: str) -> str:
        return f"{PREFIX}.{layer}.{part}"

    def init_params(self, store: ParamStore, rng: np.random.Generator) -> None:
        cfg = self.cfg
        for i in range(cfg.num_layers):
            fan_in, fan_out = cfg.layer_dim(i), cfg.hidden_dim
            if cfg.arch == "gcn":
                store.add_weight(self._name(i, "weight"), rng, fan_in, fan_out)
            elif cfg.arch == "sage":
                store.add_weight(self._name(i, "weight_self"), rng, fan_in, fan_out)
                store.add_weight(self._name(i, "weight_neigh"), rng, fan_in, fan_out)
            else:
                head_dim = fan_out // cfg.gat_heads
                for head in range(cfg.gat_heads):
                    store.add_weight(self._name(i, f"heads.{head}.weight"), rng, fan_in, head_dim)
                    store.add_weight(self._name(i, f"heads.{head}.att_src"), rng, head_dim, 1)
                    store.add_weight(self._name(i, f"heads.{head}.att_dst"), rng, head_dim, 1)
            store.add_zeros(self._name(i, "bias"), 1, fan_out)

    def _layer(self, i: int, view: GraphView, h: Tensor, store: ParamStore) -> Tensor:
        cfg = self.cfg
        last = i == cfg.num_layers - 1
        act = cfg.activation if (not last or cfg.last_activation) else "none"
        bias = store[self._name(i, "bias")]
        if cfg.arch == "gcn":
            return gcn_layer(view.normalized_adj, h, store[self._name(i, "weight")], act, bias)
        if cfg.arch == "sage":
            return sage_layer(view.mean_adj, h, store[self._name(i, "weight_self")],
                              store[self._name(i, "weight_neigh")], act, bias)
        heads = [(store[self._name(i, f"heads.{k}.weight")],
                  store[self._name(i, f"heads.{k}.att_src")],
                  store[self._name(i, f"heads.{k}.att_dst")]) for k in range(cfg.gat_heads)]
        return gat_layer(view.attention_index, h, heads, act, bias)

    def encode(self, view: GraphView, store: ParamStore, training: bool = False,
               rng: Optional[np.random.Generator] = None, upto: Optional[int] = None) -> EmbeddingStack:
        """
        Layers 0..upto (default: all k). In training mode dropout with
        cfg.keep_prob is applied to each hidden output before it feeds the
        next layer; the stack itself holds the undropped outputs.
        """
        cfg = self.cfg
        upto = cfg.num_layers if upto is None else upto
        if not 0 <= upto <= cfg.num_layers:
            raise IndexRangeError(f"layer {upto} outside [0, {cfg.num_layers}]")
        layers = [view.features]
        h = view.features
        for i in range(upto):
            out = self._layer(i, view, h, store)
            layers.append(out)
            h = ops.dropout(out, cfg.keep_prob, rng, training) if i < cfg.num_layers - 1 else out
        return EmbeddingStack(layers=layers, num_layers=cfg.num_layers)


def encode(view: GraphView, cfg: EncoderConfig, params: ParamStore, training: bool = False,
           rng: Optional[np.random.Generator] = None) -> EmbeddingStack:
    return Encoder(cfg).encode(view, params, training, rng)

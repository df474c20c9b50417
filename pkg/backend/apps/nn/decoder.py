"""
Decoders: pair scorers (dot, mlp_edge) and the row-wise feature MLP.
"""

from typing import List, Optional, Tuple

import numpy as np

from ..core.exceptions import ContractError, DimensionError
from ..tensor import Tensor, ops
from .layers import mlp
from .params import ParamStore
from .schemas import DecoderConfig

PREFIX = "decoder.layers"


def decode_edge(kind: str, z_left: Tensor, z_right: Tensor,
                layers: List[Tuple[Tensor, Tensor]] = (), act: str = "relu") -> Tensor:
    """Raw (pre-sigmoid) score per row pair, m x 1."""
    if z_left.rows != z_right.rows:
        raise DimensionError(f"decode_edge[{kind}]", z_left.shape, z_right.shape)
    if kind == "dot":
        if z_left.cols != z_right.cols:
            raise DimensionError("decode_edge[dot]", z_left.shape, z_right.shape)
        return ops.reduce(ops.mul(z_left, z_right), "sum", "rows")
    if kind == "mlp_edge":
        return mlp(ops.concat_cols([z_left, z_right]), layers, act)
    raise ContractError(f"'{kind}' is not an edge decoder")


def decode_feature(z: Tensor, layers: List[Tuple[Tensor, Tensor]], act: str = "relu") -> Tensor:
    return mlp(z, layers, act)


class Decoder:
    """
    Decoder g over left-branch representations of width `in_dim`. For
    mlp_feature the output width is cfg.output_dim or `target_dim`.
    """

    def __init__(self, cfg: DecoderConfig, in_dim: int, target_dim: Optional[int] = None):
        self.cfg = cfg
        self.in_dim = in_dim
        if cfg.kind == "mlp_feature":
            self.out_dim = cfg.output_dim or target_dim
            if self.out_dim is None:
                raise ContractError("mlp_feature decoder needs an output dimension")
        else:
            self.out_dim = 1 if cfg.kind == "mlp_edge" else in_dim

    def _shapes(self) -> List[Tuple[int, int]]:
        if self.cfg.kind == "dot":
            return []
        first = 2 * self.in_dim if self.cfg.kind == "mlp_edge" else self.in_dim
        dims = [first] + list(self.cfg.hidden_dims) + [self.out_dim]
        return list(zip(dims[:-1], dims[1:]))

    def init_params(self, store: ParamStore, rng: np.random.Generator) -> None:
        for i, (fan_in, fan_out) in enumerate(self._shapes()):
            store.add_weight(f"{PREFIX}.{i}.weight", rng, fan_in, fan_out)
            store.add_zeros(f"{PREFIX}.{i}.bias", 1, fan_out)

    def layers(self, store: ParamStore) -> List[Tuple[Tensor, Tensor]]:
        return [(store[f"{PREFIX}.{i}.weight"], store[f"{PREFIX}.{i}.bias"])
                for i in range(len(self._shapes()))]

    def decode_rows(self, z: Tensor, store: ParamStore) -> Tensor:
        """Feature MLP for mlp_feature; identity for pair scorers."""
        if self.cfg.kind != "mlp_feature":
            return z
        if z.cols != self.in_dim:
            raise DimensionError("decode_feature", z.shape, (z.rows, self.in_dim))
        return decode_feature(z, self.layers(store), self.cfg.activation)

    def score_pairs(self, z_left: Tensor, z_right: Tensor, store: ParamStore) -> Tensor:
        """Raw edge scores; mlp_feature decoders fall back to the inner product."""
        kind = self.cfg.kind if self.cfg.scores_edges else "dot"
        return decode_edge(kind, z_left, z_right, self.layers(store) if kind == "mlp_edge" else (),
                           self.cfg.activation)

"""
Encoder and decoder config schemas.
"""

from typing import List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

Activation = Literal["relu", "none"]


class EncoderConfig(BaseModel):
    """
    Encoder f. `input_dim` is filled from the dataset when omitted. Every
    hidden layer has width `hidden_dim`.
    """

    model_config = ConfigDict(extra="forbid", frozen=True)

    arch: Literal["gcn", "sage", "gat"] = "gcn"
    num_layers: int = Field(2, ge=1)
    input_dim: Optional[int] = Field(None, ge=1)
    hidden_dim: int = Field(256, ge=1)
    activation: Activation = "relu"
    keep_prob: float = Field(0.8, gt=0.0, le=1.0)
    gat_heads: int = Field(1, ge=1)
    last_activation: bool = False

    @model_validator(mode="after")
    def check_heads(self):
        if self.arch == "gat" and self.hidden_dim % self.gat_heads:
            raise ValueError(f"hidden_dim {self.hidden_dim} not divisible by gat_heads {self.gat_heads}")
        return self

    def layer_dim(self, layer: int) -> int:
        """Width of H^(layer)."""
        if layer == 0:
            if self.input_dim is None:
                raise ValueError("input_dim is unresolved")
            return self.input_dim
        return self.hidden_dim


class DecoderConfig(BaseModel):
    """Decoder g: `dot` and `mlp_edge` score node pairs, `mlp_feature` maps rows."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    kind: Literal["dot", "mlp_edge", "mlp_feature"] = "dot"
    hidden_dims: List[int] = Field(default_factory=list)
    output_dim: Optional[int] = Field(None, ge=1)
    activation: Activation = "relu"

    @model_validator(mode="after")
    def check_dims(self):
        if any(d < 1 for d in self.hidden_dims):
            raise ValueError("hidden_dims entries must be >= 1")
        return self

    @property
    def scores_edges(self) -> bool:
        return self.kind in ("dot", "mlp_edge")

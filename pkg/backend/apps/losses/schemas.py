"""
Loss and negative-sampler config schemas.
"""

from typing import Literal

from pydantic import BaseModel, ConfigDict, Field

LossKind = Literal["bce", "mse", "sce", "infonce", "simcse"]

# pair modes each loss can consume
LOSS_PAIR_MODES = {
    "bce": ("edge_pair",),
    "mse": ("same_node",),
    "sce": ("same_node",),
    "infonce": ("same_node", "edge_pair"),
    "simcse": ("same_node", "edge_pair"),
}


class LossConfig(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)

    kind: LossKind = "bce"
    temperature: float = Field(0.5, gt=0.0)
    sce_gamma: float = Field(2.0, ge=1.0)

    def supports(self, pair_mode: str) -> bool:
        return pair_mode in LOSS_PAIR_MODES[self.kind]

    @property
    def needs_negatives(self) -> bool:
        return self.kind == "bce"


class NegSamplerConfig(BaseModel):
    """Negatives per step = multiplier x number of positive pairs."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    strategy: Literal["uniform", "degree", "similarity"] = "uniform"
    multiplier: int = Field(1, ge=1)

"""
Config schemas for synthetic graphs.
"""

from typing import List, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from .models import Graph
from .synthetic import generate_synthetic


class SyntheticSpec(BaseModel):
    """Stochastic block model parameters, as read from `gen` spec files."""

    model_config = ConfigDict(extra="forbid")

    blocks: int = Field(2, ge=1)
    sizes: List[int] = Field(default_factory=lambda: [50, 50])
    p_in: float = Field(0.9, ge=0.0, le=1.0)
    p_out: float = Field(0.05, ge=0.0, le=1.0)
    feature_dim: Optional[int] = Field(None, ge=1)
    noise: float = Field(0.1, ge=0.0)
    seed: int = 0

    @model_validator(mode="after")
    def check_blocks(self):
        if len(self.sizes) != self.blocks:
            raise ValueError(f"sizes has {len(self.sizes)} entries for {self.blocks} blocks")
        if any(s < 1 for s in self.sizes):
            raise ValueError("every block size must be >= 1")
        if not self.p_out < self.p_in:
            raise ValueError(f"p_out ({self.p_out}) must be < p_in ({self.p_in})")
        if self.feature_dim is not None and self.feature_dim < self.blocks:
            raise ValueError(f"feature_dim must be >= blocks ({self.blocks})")
        return self

    def build(self) -> Graph:
        return generate_synthetic(self.blocks, self.sizes, self.p_in, self.p_out,
                                  self.feature_dim, self.noise, self.seed)

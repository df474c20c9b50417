"""
Downstream evaluation config schemas.
"""

from typing import Literal, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator


class ProbeConfig(BaseModel):
    """Full-batch Adam on a multinomial logistic regression."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    epochs: int = Field(100, ge=1)
    learning_rate: float = Field(0.01, gt=0.0)
    weight_decay: float = Field(1e-4, ge=0.0)


class EvalConfig(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)

    probe: ProbeConfig = Field(default_factory=ProbeConfig)
    embed_mode: Literal["last", "concat"] = "last"
    kmeans_restarts: int = Field(10, ge=1)
    node_split: Tuple[float, float, float] = (0.8, 0.1, 0.1)
    link_split: Tuple[float, float, float] = (0.85, 0.05, 0.10)

    @field_validator("node_split", "link_split")
    @classmethod
    def check_fractions(cls, value):
        if any(f <= 0 for f in value) or abs(sum(value) - 1.0) > 1e-9:
            raise ValueError("fractions must be positive and sum to 1")
        return value

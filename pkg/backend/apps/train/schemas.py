"""
Training loop config.
"""

from typing import Optional

from pydantic import BaseModel, ConfigDict, Field


class TrainConfig(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)

    epochs: int = Field(500, ge=1)
    # 0 is accepted and freezes every parameter
    learning_rate: float = Field(0.01, ge=0.0)
    weight_decay: float = Field(5e-4, ge=0.0)
    beta1: float = Field(0.9, ge=0.0, lt=1.0)
    beta2: float = Field(0.999, ge=0.0, lt=1.0)
    eps: float = Field(1e-8, gt=0.0)
    seed: int = 0
    eval_every: Optional[int] = Field(None, ge=1)
    grad_clip: Optional[float] = Field(None, gt=0.0)

    @property
    def log_every(self) -> int:
        return self.eval_every or 50

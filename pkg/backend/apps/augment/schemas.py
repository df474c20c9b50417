"""
Augmentation config schema.
"""

from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

AugmentKind = Literal["none", "edge_mask", "path_mask", "node_mask", "feature_mask"]

DEFAULT_RATIOS = {
    "none": 0.0,
    "edge_mask": 0.7,
    "node_mask": 0.7,
    "feature_mask": 0.5,
}


class AugmentSpec(BaseModel):
    """
    One view's augmentation. `p` defaults per kind when omitted. Path masking
    is driven by root_fraction and walk_len and takes no p.
    """

    model_config = ConfigDict(extra="forbid", frozen=True)

    kind: AugmentKind = "none"
    p: float = Field(0.0, ge=0.0, le=1.0)
    root_fraction: float = Field(0.5, gt=0.0, le=1.0)
    walk_len: int = Field(3, ge=1)
    stream: Optional[str] = None

    @model_validator(mode="before")
    @classmethod
    def fill_ratio(cls, data):
        if isinstance(data, dict) and data.get("p") is None:
            data = {**data, "p": DEFAULT_RATIOS.get(data.get("kind", "none"), 0.0)}
        return data

    @model_validator(mode="after")
    def check_path_ratio(self):
        if self.kind == "path_mask" and self.p > 0.0:
            raise ValueError("path_mask takes no p; set root_fraction and walk_len instead")
        return self

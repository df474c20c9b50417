"""
ViewSpec: which views, receptive fields and node pairing a contrast uses.
"""

from typing import Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, field_validator

from ..core.exceptions import IndexRangeError

ViewName = Literal["A", "B"]
# "k" is the encoder depth, "k-1" one layer below it
LayerRef = Union[int, Literal["k", "k-1"]]


def resolve_layer(ref: LayerRef, k: int, name: str) -> int:
    if ref == "k":
        value = k
    elif ref == "k-1":
        value = k - 1
    else:
        value = int(ref)
    if not 0 <= value <= k:
        raise IndexRangeError(f"receptive field {name}={ref} outside [0, {k}]")
    return value


class ViewSpec(BaseModel):
    """
    left: view `left_graph`, layer `l`, node v. right: view `right_graph`,
    layer `r`, node u (u == v in same_node mode, an edge in edge_pair mode).
    """

    model_config = ConfigDict(extra="forbid", frozen=True)

    left_graph: ViewName = "A"
    right_graph: ViewName = "A"
    l: LayerRef = "k"
    r: LayerRef = "k"
    pair_mode: Literal["same_node", "edge_pair"] = "edge_pair"
    stop_gradient_right: bool = False
    decode_right: Optional[bool] = None

    @field_validator("l", "r")
    @classmethod
    def check_nonnegative(cls, value):
        if isinstance(value, int) and value < 0:
            raise ValueError("receptive field must be >= 0")
        return value

    def resolve(self, k: int) -> "ViewSpec":
        """Copy with l and r as concrete layer indices for an encoder of depth k."""
        return self.model_copy(update={"l": resolve_layer(self.l, k, "l"),
                                       "r": resolve_layer(self.r, k, "r")})

    @property
    def views_equal(self) -> bool:
        return self.left_graph == self.right_graph

    @property
    def nodes_equal(self) -> bool:
        return self.pair_mode == "same_node"

    def deepest_layer(self, name: str) -> Optional[int]:
        """Deepest resolved layer read from view `name`, or None if unused."""
        layers = []
        if self.left_graph == name:
            layers.append(self.l)
        if self.right_graph == name:
            layers.append(self.r)
        return max(layers) if layers else None

"""
Named view presets for the known autoencoders and the unexplored cases.
"""

from dataclasses import dataclass
from typing import Dict, List

from ..augment import AugmentSpec
from ..core.exceptions import ConfigError
from ..losses.schemas import LossConfig
from ..nn import DecoderConfig
from .schemas import ViewSpec


@dataclass(frozen=True)
class Preset:
    name: str
    aug_a: AugmentSpec
    aug_b: AugmentSpec
    view: ViewSpec
    loss: LossConfig
    decoder: DecoderConfig


NONE = AugmentSpec(kind="none")
EDGE_MASK = AugmentSpec(kind="edge_mask", p=0.7)
FEATURE_MASK = AugmentSpec(kind="feature_mask", p=0.5)

PRESETS: Dict[str, Preset] = {
    "gae": Preset(
        "gae", NONE, NONE,
        ViewSpec(left_graph="A", right_graph="A", l="k", r="k", pair_mode="edge_pair"),
        LossConfig(kind="bce"), DecoderConfig(kind="dot"),
    ),
    "gae_f": Preset(
        "gae_f", NONE, NONE,
        ViewSpec(left_graph="A", right_graph="A", l="k", r=0, pair_mode="same_node"),
        LossConfig(kind="mse"), DecoderConfig(kind="mlp_feature"),
    ),
    "maskgae": Preset(
        "maskgae", EDGE_MASK, NONE,
        ViewSpec(left_graph="A", right_graph="A", l="k", r="k", pair_mode="edge_pair"),
        LossConfig(kind="bce"), DecoderConfig(kind="mlp_edge", hidden_dims=[64]),
    ),
    "graphmae": Preset(
        "graphmae", FEATURE_MASK, NONE,
        ViewSpec(left_graph="A", right_graph="B", l="k", r=0, pair_mode="same_node"),
        LossConfig(kind="sce"), DecoderConfig(kind="mlp_feature"),
    ),
    "gcl": Preset(
        "gcl", AugmentSpec(kind="edge_mask", p=0.3), AugmentSpec(kind="edge_mask", p=0.3),
        ViewSpec(left_graph="A", right_graph="B", l="k", r="k", pair_mode="same_node",
                 decode_right=True),
        LossConfig(kind="infonce"), DecoderConfig(kind="mlp_feature"),
    ),
    "lrgae6": Preset(
        "lrgae6", EDGE_MASK, NONE,
        ViewSpec(left_graph="A", right_graph="A", l="k", r="k-1", pair_mode="edge_pair"),
        LossConfig(kind="bce"), DecoderConfig(kind="dot"),
    ),
    "lrgae7": Preset(
        "lrgae7", EDGE_MASK, NONE,
        ViewSpec(left_graph="A", right_graph="B", l="k", r="k", pair_mode="edge_pair"),
        LossConfig(kind="bce"), DecoderConfig(kind="dot"),
    ),
    "lrgae8": Preset(
        "lrgae8", EDGE_MASK, FEATURE_MASK,
        ViewSpec(left_graph="A", right_graph="B", l="k", r="k-1", pair_mode="edge_pair"),
        LossConfig(kind="bce"), DecoderConfig(kind="dot"),
    ),
}


def preset(name: str) -> Preset:
    try:
        return PRESETS[name]
    except KeyError:
        raise ConfigError("preset", f"unknown preset '{name}', expected one of {preset_names()}") from None


def preset_names() -> List[str]:
    return sorted(PRESETS)

"""
Ablation matrix: every preset against each loss its pair mode accepts
(with every negative sampler for bce), lrgae7 under each structure masking,
and lrgae6/7/8 under each encoder architecture.
"""

from typing import Any, Dict, Iterator, List, Tuple

from ..losses import LOSS_PAIR_MODES
from ..views import preset, preset_names
from .schemas import ExperimentConfig

SAMPLERS = ("uniform", "degree", "similarity")
MASKINGS = ("edge_mask", "path_mask", "node_mask")
ARCHITECTURES = ("gcn", "sage", "gat")
LRGAE_PRESETS = ("lrgae6", "lrgae7", "lrgae8")

Variant = Tuple[str, Dict[str, Any]]


def model_block(name: str, **overrides) -> Dict[str, Any]:
    p = preset(name)
    block = {
        "aug_a": p.aug_a.model_dump(),
        "aug_b": p.aug_b.model_dump(),
        "view": p.view.model_dump(),
        "decoder": p.decoder.model_dump(),
        "loss": p.loss.model_dump(),
    }
    block.update(overrides)
    return block


def loss_variants(name: str) -> Iterator[Variant]:
    """(loss, model block) for every loss the preset's pair mode accepts."""
    pair_mode = preset(name).view.pair_mode
    for loss, modes in LOSS_PAIR_MODES.items():
        if pair_mode in modes:
            yield loss, model_block(name, loss={"kind": loss})


def masking_variants() -> Iterator[Variant]:
    for kind in MASKINGS:
        yield f"lrgae7_{kind}", model_block("lrgae7", aug_a={"kind": kind})


def encoder_variants() -> Iterator[Tuple[str, str, str]]:
    for name in LRGAE_PRESETS:
        for arch in ARCHITECTURES:
            yield f"{name}_{arch}", name, arch


def ablation_matrix(dataset: str, task: str, epochs: int, seeds: List[int]) -> Iterator[Variant]:
    """(file stem, experiment config) pairs. Every config validates."""
    base = {"dataset": {"path": dataset}, "task": task, "train": {"epochs": epochs}, "seeds": seeds}

    def checked(config: Dict[str, Any]) -> Dict[str, Any]:
        ExperimentConfig.model_validate(config)
        return config

    for name in preset_names():
        for loss, block in loss_variants(name):
            samplers = SAMPLERS if loss == "bce" else ("uniform",)
            for strategy in samplers:
                yield f"{name}_{loss}_{strategy}", checked(
                    {**base, "model": block, "neg_sampler": {"strategy": strategy}})
    for stem, block in masking_variants():
        yield stem, checked({**base, "model": block})
    for stem, name, arch in encoder_variants():
        yield stem, checked({**base, "preset": name, "encoder": {"arch": arch}})

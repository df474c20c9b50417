"""
Experiment config schema: one JSON file describes a full multi-seed run.
"""

from pathlib import Path
from typing import List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from config import get_settings

from ..augment import AugmentSpec
from ..core.exceptions import ConfigError, IndexRangeError
from ..evaluation import EvalConfig
from ..graph import Graph, load_graph
from ..graph.schemas import SyntheticSpec
from ..losses import LossConfig, NegSamplerConfig
from ..nn import DecoderConfig, EncoderConfig
from ..train import TrainConfig
from ..views import ViewSpec, case_abbreviation, case_of, preset, preset_names
from ..views.cases import DEGENERATE_CASE

Task = Literal["node_classification", "link_prediction", "clustering"]


def default_seeds() -> List[int]:
    return list(get_settings().DEFAULT_SEEDS)


class DatasetConfig(BaseModel):
    """A dataset directory on disk, or a stochastic block model generated per run."""

    model_config = ConfigDict(extra="forbid")

    path: Optional[str] = None
    synthetic: Optional[SyntheticSpec] = None
    name: Optional[str] = None

    @model_validator(mode="after")
    def check_source(self):
        if (self.path is None) == (self.synthetic is None):
            raise ValueError("exactly one of 'path' and 'synthetic' is required")
        return self

    @property
    def display_name(self) -> str:
        if self.name:
            return self.name
        return Path(self.path).name if self.path else "sbm"

    def load(self) -> Graph:
        return load_graph(self.path) if self.path else self.synthetic.build()


class ModelBlock(BaseModel):
    """Explicit views, decoder and loss, in place of a preset."""

    model_config = ConfigDict(extra="forbid")

    aug_a: AugmentSpec = Field(default_factory=AugmentSpec)
    aug_b: AugmentSpec = Field(default_factory=AugmentSpec)
    view: ViewSpec
    decoder: DecoderConfig = Field(default_factory=DecoderConfig)
    loss: LossConfig = Field(default_factory=LossConfig)


class ExperimentConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    dataset: DatasetConfig
    task: Task = "node_classification"
    preset: Optional[str] = None
    model: Optional[ModelBlock] = None
    encoder: EncoderConfig = Field(default_factory=EncoderConfig)
    neg_sampler: NegSamplerConfig = Field(default_factory=NegSamplerConfig)
    train: TrainConfig = Field(default_factory=TrainConfig)
    eval: EvalConfig = Field(default_factory=EvalConfig)
    seeds: List[int] = Field(default_factory=default_seeds, min_length=1)
    output: Optional[str] = None

    @field_validator("preset")
    @classmethod
    def check_preset(cls, value):
        if value is not None and value not in preset_names():
            raise ValueError(f"unknown preset '{value}', expected one of {preset_names()}")
        return value

    @field_validator("seeds")
    @classmethod
    def check_unique_seeds(cls, value):
        if len(set(value)) != len(value):
            raise ValueError("seeds must be distinct")
        return value

    @model_validator(mode="after")
    def check_model(self):
        if (self.preset is None) == (self.model is None):
            raise ValueError("exactly one of 'preset' and 'model' is required")
        block = self.model_block()
        k = self.encoder.num_layers
        try:
            case = case_of(block.view, k)
        except IndexRangeError as e:
            raise ConfigError("model.view", str(e)) from None
        if case == DEGENERATE_CASE:
            raise ConfigError("model.view", f"case 1 ({case_abbreviation(block.view, k)}) is not "
                                            f"applicable: identical views, fields and nodes give a zero loss")
        if not block.loss.supports(block.view.pair_mode):
            raise ConfigError("model.loss.kind",
                              f"'{block.loss.kind}' cannot consume {block.view.pair_mode} pairs")
        return self

    def model_block(self) -> ModelBlock:
        if self.model is not None:
            return self.model
        p = preset(self.preset)
        return ModelBlock(aug_a=p.aug_a, aug_b=p.aug_b, view=p.view, decoder=p.decoder, loss=p.loss)

    @property
    def label(self) -> str:
        """Preset name, or the case label of an explicit model block."""
        if self.preset:
            return self.preset
        return f"custom-{case_abbreviation(self.model.view, self.encoder.num_layers)}"

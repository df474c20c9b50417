from .optim import Adam, OptimizerState, adam_step, clip_gradients
from .schemas import TrainConfig
from .trainer import EpochState, RunRecord, Trainer, embed, resolve_encoder, score_links, train

__all__ = [
    "Adam", "EpochState", "OptimizerState", "RunRecord", "TrainConfig", "Trainer",
    "adam_step", "clip_gradients", "embed", "resolve_encoder", "score_links", "train",
]

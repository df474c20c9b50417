from .functional import bce_edge_loss, info_nce, mse_feature_loss, sce_loss, simcse
from .objective import evaluate_objective
from .sampling import (SAMPLERS, DegreeSampler, NegativeSampler, SimilaritySampler, UniformSampler,
                       build_sampler, negative_sample)
from .schemas import LOSS_PAIR_MODES, LossConfig, NegSamplerConfig

__all__ = [
    "LOSS_PAIR_MODES", "LossConfig", "NegSamplerConfig", "SAMPLERS",
    "NegativeSampler", "UniformSampler", "DegreeSampler", "SimilaritySampler",
    "bce_edge_loss", "build_sampler", "evaluate_objective", "info_nce", "mse_feature_loss",
    "negative_sample", "sce_loss", "simcse",
]

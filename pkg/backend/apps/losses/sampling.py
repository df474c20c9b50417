"""
Negative samplers. Sampling is approximate: pairs may coincide with true
edges, but never with self-pairs.
"""

import logging
from abc import ABC, abstractmethod
from typing import Dict, Optional, Type

import numpy as np

from ..core.exceptions import ConfigError, ContractError
from ..graph import Graph
from .schemas import NegSamplerConfig

logger = logging.getLogger(__name__)

SIMILARITY_RETRY_FACTOR = 10


def _canonical(u: np.ndarray, v: np.ndarray) -> np.ndarray:
    return np.column_stack([np.minimum(u, v), np.maximum(u, v)]).astype(np.int64)


class NegativeSampler(ABC):
    """Abstract base class for negative pair samplers."""

    @abstractmethod
    def sample(self, g: Graph, count: int, rng: np.random.Generator,
               embeddings: Optional[np.ndarray] = None) -> np.ndarray:
        """`count` x 2 array of u <= v node pairs with u != v."""
        pass

    def get_strategy(self) -> str:
        return self.__class__.__name__.replace("Sampler", "").lower()

    @staticmethod
    def _check(g: Graph, count: int) -> None:
        if count < 1:
            raise ContractError(f"negative count must be >= 1, got {count}")
        if g.n < 2:
            raise ContractError("negative sampling needs at least 2 nodes")


class UniformSampler(NegativeSampler):
    def sample(self, g, count, rng, embeddings=None):
        self._check(g, count)
        u = rng.integers(0, g.n, count)
        v = rng.integers(0, g.n, count)
        clash = np.flatnonzero(u == v)
        while clash.size:
            v[clash] = rng.integers(0, g.n, clash.size)
            clash = clash[u[clash] == v[clash]]
        return _canonical(u, v)


class DegreeSampler(NegativeSampler):
    """Both endpoints drawn with probability proportional to node degree."""

    def draw_endpoints(self, g: Graph, size: int, rng: np.random.Generator) -> Optional[np.ndarray]:
        degrees = g.degrees().astype(np.float64)
        if (degrees > 0).sum() < 2:
            return None
        return rng.choice(g.n, size=size, p=degrees / degrees.sum())

    def sample(self, g, count, rng, embeddings=None):
        self._check(g, count)
        u = self.draw_endpoints(g, count, rng)
        if u is None:
            logger.warning("Degree sampler: fewer than two nodes with edges, using uniform")
            return UniformSampler().sample(g, count, rng)
        v = self.draw_endpoints(g, count, rng)
        clash = np.flatnonzero(u == v)
        while clash.size:
            v[clash] = self.draw_endpoints(g, clash.size, rng)
            clash = clash[u[clash] == v[clash]]
        return _canonical(u, v)


class SimilaritySampler(NegativeSampler):
    """
    Uniform candidates kept with probability (1 - cos(z_u, z_v)) / 2, so
    dissimilar pairs are favoured. At most 10 x count candidates are drawn;
    any shortfall is filled uniformly.
    """

    def sample(self, g, count, rng, embeddings=None):
        self._check(g, count)
        if embeddings is None:
            raise ContractError("similarity sampling needs current embeddings")
        z = np.asarray(embeddings, dtype=np.float64)
        norms = np.linalg.norm(z, axis=1, keepdims=True)
        unit = np.divide(z, norms, out=np.zeros_like(z), where=norms > 0)

        candidates = UniformSampler().sample(g, SIMILARITY_RETRY_FACTOR * count, rng)
        cos = np.einsum("ij,ij->i", unit[candidates[:, 0]], unit[candidates[:, 1]])
        keep_prob = np.clip((1.0 - cos) / 2.0, 0.0, 1.0)
        kept = candidates[rng.random(candidates.shape[0]) < keep_prob][:count]
        if kept.shape[0] < count:
            missing = count - kept.shape[0]
            logger.warning(f"Similarity sampler kept {kept.shape[0]}/{count}, "
                           f"filling {missing} uniformly")
            kept = np.concatenate([kept, UniformSampler().sample(g, missing, rng)])
        return kept


SAMPLERS: Dict[str, Type[NegativeSampler]] = {
    "uniform": UniformSampler,
    "degree": DegreeSampler,
    "similarity": SimilaritySampler,
}


def build_sampler(cfg: NegSamplerConfig) -> NegativeSampler:
    try:
        return SAMPLERS[cfg.strategy]()
    except KeyError:
        raise ConfigError("neg_sampler.strategy", f"unknown strategy '{cfg.strategy}'") from None


def negative_sample(g: Graph, count: int, strategy: str, rng: np.random.Generator,
                    embeddings: Optional[np.ndarray] = None) -> np.ndarray:
    return build_sampler(NegSamplerConfig(strategy=strategy)).sample(g, count, rng, embeddings)

"""
Adam with bias correction and decoupled weight decay.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict

import numpy as np

from ..core.exceptions import TrainingError
from ..nn import ParamStore
from .schemas import TrainConfig

logger = logging.getLogger(__name__)


@dataclass
class OptimizerState:
    """First and second moments per parameter name, and the step counter."""

    m: Dict[str, np.ndarray] = field(default_factory=dict)
    v: Dict[str, np.ndarray] = field(default_factory=dict)
    t: int = 0


def clip_gradients(grads: Dict[str, np.ndarray], max_norm: float) -> float:
    """Rescale `grads` in place to global L2 norm <= max_norm; returns the norm before clipping."""
    total = float(np.sqrt(sum(float((g * g).sum()) for g in grads.values())))
    if total > max_norm:
        factor = max_norm / total
        for g in grads.values():
            g *= factor
    return total


def adam_step(params: ParamStore, grads: Dict[str, np.ndarray], state: OptimizerState,
              cfg: TrainConfig) -> OptimizerState:
    """
    One Adam update of every parameter in `params`, in place. Weight decay is
    applied to theta before the moment update.
    """
    for name, g in grads.items():
        if not np.all(np.isfinite(g)):
            raise TrainingError(f"non-finite gradient for parameter '{name}'", parameter=name)

    state.t += 1
    bc1 = 1.0 - cfg.beta1 ** state.t
    bc2 = 1.0 - cfg.beta2 ** state.t
    lr = cfg.learning_rate

    for name, theta in params.items():
        g = grads.get(name)
        if g is None:
            g = np.zeros_like(theta.data)
        if name not in state.m:
            state.m[name] = np.zeros_like(theta.data)
            state.v[name] = np.zeros_like(theta.data)

        if cfg.weight_decay:
            theta.data -= lr * cfg.weight_decay * theta.data

        m, v = state.m[name], state.v[name]
        m *= cfg.beta1
        m += (1.0 - cfg.beta1) * g
        v *= cfg.beta2
        v += (1.0 - cfg.beta2) * (g * g)

        theta.data -= lr * (m / bc1) / (np.sqrt(v / bc2) + cfg.eps)
    return state


class Adam:
    """Stateful wrapper over adam_step for one ParamStore."""

    def __init__(self, params: ParamStore, cfg: TrainConfig):
        self.params = params
        self.cfg = cfg
        self.state = OptimizerState()

    def step(self, grads: Dict[str, np.ndarray]) -> None:
        if self.cfg.grad_clip is not None:
            norm = clip_gradients(grads, self.cfg.grad_clip)
            if norm > self.cfg.grad_clip:
                logger.debug(f"Clipped gradient norm {norm:.4g} to {self.cfg.grad_clip}")
        adam_step(self.params, grads, self.state, self.cfg)

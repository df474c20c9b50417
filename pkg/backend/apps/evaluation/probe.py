"""
Linear probe: multinomial logistic regression on frozen embeddings.
"""

import logging
from dataclasses import dataclass

import numpy as np

from ..core.exceptions import ContractError
from ..graph import NodeSplit
from ..nn import ParamStore
from ..tensor import Tensor, backward, ops
from ..train import OptimizerState, TrainConfig, adam_step
from .schemas import ProbeConfig

logger = logging.getLogger(__name__)


@dataclass
class ProbeResult:
    accuracy: float
    val_accuracy: float
    best_epoch: int


def _accuracy(logits: np.ndarray, labels: np.ndarray) -> float:
    return float(np.mean(logits.argmax(axis=1) == labels))


def fit_probe(z, labels, split: NodeSplit, cfg: ProbeConfig = None) -> ProbeResult:
    """
    Train on split.train, keep the parameters with the best validation
    accuracy (earliest on ties), report test accuracy. Gradients never reach `z`.
    """
    cfg = cfg or ProbeConfig()
    x = np.asarray(getattr(z, "data", z), dtype=np.float64)
    labels = np.asarray(labels, dtype=np.int64)
    train_labels = labels[split.train]
    if np.unique(train_labels).size < 2:
        raise ContractError("linear probe needs at least two classes in the training nodes")
    num_classes = int(labels.max()) + 1

    store = ParamStore()
    weight = store.add_zeros("probe.weight", x.shape[1], num_classes)
    bias = store.add_zeros("probe.bias", 1, num_classes)
    x_train = Tensor(x[split.train])
    onehot = Tensor(np.eye(num_classes)[train_labels])
    adam_cfg = TrainConfig(learning_rate=cfg.learning_rate, weight_decay=cfg.weight_decay)
    state = OptimizerState()

    def logits(rows: np.ndarray) -> np.ndarray:
        return x[rows] @ weight.data + bias.data

    best = (-1.0, 0, store.snapshot())
    for epoch in range(1, cfg.epochs + 1):
        scores = ops.add_row(ops.matmul(x_train, weight), bias)
        picked = ops.reduce(ops.mul(scores, onehot), "sum", "rows")
        loss = ops.mean_all(ops.sub(ops.logsumexp_rows(scores), picked))
        grads = backward(loss, store.tensors())
        adam_step(store, {name: grads[t] for name, t in store.items()}, state, adam_cfg)

        val_acc = _accuracy(logits(split.val), labels[split.val])
        if val_acc > best[0]:
            best = (val_acc, epoch, store.snapshot())

    val_acc, best_epoch, values = best
    store.load(values)
    test_acc = _accuracy(logits(split.test), labels[split.test])
    logger.debug(f"probe: val={val_acc:.4f} test={test_acc:.4f} at epoch {best_epoch}")
    return ProbeResult(accuracy=test_acc, val_accuracy=val_acc, best_epoch=best_epoch)


def linear_probe(z, labels, split: NodeSplit, cfg: ProbeConfig = None) -> float:
    return fit_probe(z, labels, split, cfg).accuracy

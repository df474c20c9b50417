"""
k-means over frozen embeddings and NMI against ground-truth labels.
"""

import logging
from dataclasses import dataclass, field
from typing import List

import numpy as np
from scipy.spatial.distance import cdist
from sklearn.cluster import kmeans_plusplus
from sklearn.metrics import normalized_mutual_info_score

from ..core.exceptions import ContractError

logger = logging.getLogger(__name__)

MAX_ITER = 300


@dataclass
class KMeansResult:
    assignments: np.ndarray
    centroids: np.ndarray
    inertia: float
    # inertia after every assignment step of the winning restart
    history: List[float] = field(default_factory=list)

    @property
    def k(self) -> int:
        return self.centroids.shape[0]


def _as_array(z) -> np.ndarray:
    return np.asarray(getattr(z, "data", z), dtype=np.float64)


def _lloyd(x: np.ndarray, centroids: np.ndarray) -> KMeansResult:
    history: List[float] = []
    assignments = None
    for _ in range(MAX_ITER):
        dist = cdist(x, centroids, "sqeuclidean")
        new_assignments = dist.argmin(axis=1)
        point_dist = dist[np.arange(x.shape[0]), new_assignments]
        history.append(float(point_dist.sum()))
        if assignments is not None and np.array_equal(new_assignments, assignments):
            break
        assignments = new_assignments

        taken = set()
        for c in range(centroids.shape[0]):
            members = assignments == c
            if members.any():
                centroids[c] = x[members].mean(axis=0)
                continue
            # empty cluster: move it onto the worst-served point not yet used
            for idx in np.argsort(-point_dist, kind="mergesort"):
                if idx not in taken:
                    taken.add(int(idx))
                    centroids[c] = x[idx]
                    break
    return KMeansResult(assignments=assignments, centroids=centroids, inertia=history[-1],
                        history=history)


def fit_kmeans(z, k: int, restarts: int = 10, rng: np.random.Generator = None) -> KMeansResult:
    """Lloyd's algorithm from k-means++ seeds; the lowest-inertia restart wins."""
    x = _as_array(z)
    if not 1 <= k <= x.shape[0]:
        raise ContractError(f"k-means needs 1 <= k <= n, got k={k} for n={x.shape[0]}")
    if restarts < 1:
        raise ContractError(f"restarts must be >= 1, got {restarts}")
    rng = rng if rng is not None else np.random.default_rng(0)

    best = None
    for _ in range(restarts):
        seeds, _ = kmeans_plusplus(x, k, random_state=int(rng.integers(2 ** 31 - 1)))
        result = _lloyd(x, seeds.astype(np.float64))
        if best is None or result.inertia < best.inertia:
            best = result
    logger.debug(f"k-means k={k}: inertia {best.inertia:.6g} after {len(best.history)} steps")
    return best


def kmeans(z, k: int, restarts: int = 10, rng: np.random.Generator = None) -> np.ndarray:
    return fit_kmeans(z, k, restarts, rng).assignments


def nmi(pred, truth) -> float:
    """
    2 I(pred; truth) / (H(pred) + H(truth)). Two single-cluster partitions
    score 1.0; a single-cluster partition against any other scores 0.0.
    """
    pred, truth = np.asarray(pred).ravel(), np.asarray(truth).ravel()
    if pred.size != truth.size:
        raise ContractError(f"nmi: {pred.size} predictions for {truth.size} labels")
    pred_constant, truth_constant = np.unique(pred).size <= 1, np.unique(truth).size <= 1
    if pred_constant and truth_constant:
        return 1.0
    if pred_constant or truth_constant:
        return 0.0
    return float(normalized_mutual_info_score(truth, pred, average_method="arithmetic"))

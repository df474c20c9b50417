"""
Rank-based link prediction metrics.
"""

from typing import Dict, Tuple

import numpy as np
from scipy.stats import rankdata

from ..core.exceptions import ContractError


def _scores(pos_scores, neg_scores) -> Tuple[np.ndarray, np.ndarray]:
    pos = np.asarray(pos_scores, dtype=np.float64).ravel()
    neg = np.asarray(neg_scores, dtype=np.float64).ravel()
    if pos.size == 0 or neg.size == 0:
        raise ContractError("link metrics need nonempty positive and negative scores")
    return pos, neg


def auc_score(pos_scores, neg_scores) -> float:
    """P(positive outranks negative), ties counted 1/2, via the rank-sum statistic."""
    pos, neg = _scores(pos_scores, neg_scores)
    ranks = rankdata(np.concatenate([pos, neg]), method="average")
    p, q = pos.size, neg.size
    return float((ranks[:p].sum() - p * (p + 1) / 2.0) / (p * q))


def average_precision(pos_scores, neg_scores) -> float:
    """
    Sum over distinct score thresholds (descending) of precision times the
    recall gained there. Without ties this is the mean precision at the rank
    of each positive.
    """
    pos, neg = _scores(pos_scores, neg_scores)
    scores = np.concatenate([pos, neg])
    is_pos = np.concatenate([np.ones(pos.size), np.zeros(neg.size)])
    order = np.argsort(-scores, kind="mergesort")
    scores, is_pos = scores[order], is_pos[order]

    last_of_group = np.r_[np.flatnonzero(np.diff(scores)), scores.size - 1]
    true_pos = np.cumsum(is_pos)[last_of_group]
    precision = true_pos / (last_of_group + 1)
    recall_gain = np.diff(np.r_[0.0, true_pos]) / pos.size
    return float((precision * recall_gain).sum())


def link_metrics(pos_scores, neg_scores) -> Dict[str, float]:
    return {"auc": auc_score(pos_scores, neg_scores), "ap": average_precision(pos_scores, neg_scores)}

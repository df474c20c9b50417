"""
Graph data model and split containers.
"""

from dataclasses import dataclass, field
from typing import Dict, List, Optional

import numpy as np

from ..core.exceptions import ContractError, DatasetValidationError
from ..tensor import Tensor


def canonical_edges(edges, n: Optional[int] = None) -> np.ndarray:
    """
    Undirected edge array with u < v per row, self-loops dropped, duplicates
    removed, sorted lexicographically.
    """
    arr = np.asarray(edges, dtype=np.int64)
    if arr.size == 0:
        return np.zeros((0, 2), dtype=np.int64)
    arr = arr.reshape(-1, 2)
    if arr.min() < 0:
        raise DatasetValidationError(f"negative endpoint {int(arr.min())}")
    if n is not None and arr.max() >= n:
        raise DatasetValidationError(f"endpoint {int(arr.max())} out of range for n={n}")
    arr = np.sort(arr, axis=1)
    arr = arr[arr[:, 0] != arr[:, 1]]
    if not arr.size:
        return np.zeros((0, 2), dtype=np.int64)
    return np.unique(arr, axis=0)


@dataclass(frozen=True, eq=False)
class Graph:
    """
    Immutable undirected graph: one row per pair in `edges` with u < v,
    dense node features and optional integer labels.
    """

    n: int
    edges: np.ndarray
    features: Tensor
    labels: Optional[np.ndarray] = None
    num_classes: Optional[int] = None
    public_split: Optional[Dict[str, List[int]]] = field(default=None, compare=False)

    def __post_init__(self):
        if self.features.rows != self.n:
            raise DatasetValidationError(
                f"features have {self.features.rows} rows for n={self.n}")
        self.edges.setflags(write=False)
        if self.labels is not None:
            if len(self.labels) != self.n:
                raise DatasetValidationError(f"{len(self.labels)} labels for n={self.n}")
            if self.labels.size and self.labels.min() < 0:
                raise DatasetValidationError("labels must be nonnegative")
            if self.num_classes is None:
                object.__setattr__(self, "num_classes", int(self.labels.max()) + 1 if self.n else 0)
            elif self.labels.size and self.labels.max() >= self.num_classes:
                raise DatasetValidationError(
                    f"label {int(self.labels.max())} outside [0, {self.num_classes})")
            self.labels.setflags(write=False)

    @classmethod
    def from_edges(cls, n: int, edges, features, labels=None, num_classes: Optional[int] = None,
                   public_split: Optional[Dict[str, List[int]]] = None) -> "Graph":
        features = features if isinstance(features, Tensor) else Tensor(features)
        label_arr = None if labels is None else np.array(labels, dtype=np.int64).reshape(-1)
        return cls(n=int(n), edges=canonical_edges(edges, n), features=features,
                   labels=label_arr, num_classes=num_classes, public_split=public_split)

    def with_edges(self, edges) -> "Graph":
        """Same nodes, features and labels over a different edge set."""
        return Graph(n=self.n, edges=canonical_edges(edges, self.n), features=self.features,
                     labels=self.labels, num_classes=self.num_classes,
                     public_split=self.public_split)

    @property
    def num_edges(self) -> int:
        return int(self.edges.shape[0])

    @property
    def feature_dim(self) -> int:
        return self.features.cols

    def require_labels(self) -> np.ndarray:
        if self.labels is None:
            raise ContractError("graph has no labels")
        return self.labels

    def degrees(self) -> np.ndarray:
        return np.bincount(self.edges.reshape(-1), minlength=self.n)

    def edge_keys(self) -> np.ndarray:
        """Sorted integer keys u*n+v, one per stored edge."""
        return self.edges[:, 0] * self.n + self.edges[:, 1]

    def has_edges(self, pairs) -> np.ndarray:
        pairs = np.sort(np.asarray(pairs, dtype=np.int64).reshape(-1, 2), axis=1)
        keys = pairs[:, 0] * self.n + pairs[:, 1]
        return np.isin(keys, self.edge_keys())

    def neighbors(self) -> List[np.ndarray]:
        """Adjacency lists in ascending order."""
        both = np.concatenate([self.edges, self.edges[:, ::-1]])
        order = np.lexsort((both[:, 1], both[:, 0]))
        both = both[order]
        bounds = np.searchsorted(both[:, 0], np.arange(self.n + 1))
        return [both[bounds[i]:bounds[i + 1], 1] for i in range(self.n)]

    def same_as(self, other: "Graph") -> bool:
        """Structural equality: nodes, edges, features and labels."""
        if self.n != other.n or not np.array_equal(self.edges, other.edges):
            return False
        if not np.array_equal(self.features.data, other.features.data):
            return False
        if (self.labels is None) != (other.labels is None):
            return False
        return self.labels is None or np.array_equal(self.labels, other.labels)

    def __repr__(self):
        return f"Graph(n={self.n}, edges={self.num_edges}, d={self.feature_dim})"


@dataclass(frozen=True, eq=False)
class NodeSplit:
    train: np.ndarray
    val: np.ndarray
    test: np.ndarray

    def __post_init__(self):
        sets = [set(self.train.tolist()), set(self.val.tolist()), set(self.test.tolist())]
        if sets[0] & sets[1] or sets[0] & sets[2] or sets[1] & sets[2]:
            raise ContractError("node split sets overlap")
        if not all(sets):
            raise ContractError("node split sets must be nonempty")

    def as_dict(self) -> Dict[str, List[int]]:
        return {"train": self.train.tolist(), "val": self.val.tolist(), "test": self.test.tolist()}


@dataclass(frozen=True, eq=False)
class LinkSplit:
    """Positive edges partitioned three ways plus matched negative pairs."""

    train_edges: np.ndarray
    val_pos: np.ndarray
    val_neg: np.ndarray
    test_pos: np.ndarray
    test_neg: np.ndarray

    def counts(self) -> Dict[str, int]:
        return {name: int(getattr(self, name).shape[0])
                for name in ("train_edges", "val_pos", "val_neg", "test_pos", "test_neg")}

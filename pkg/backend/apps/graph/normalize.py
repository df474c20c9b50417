"""
Symmetric GCN normalization with self-loops: D^-1/2 (A + I) D^-1/2.
"""

import numpy as np

from ..tensor import SparseMatrix
from .models import Graph


def gcn_normalize_edges(n: int, edges: np.ndarray) -> SparseMatrix:
    """Normalized adjacency over an undirected u < v edge array."""
    edges = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
    loops = np.arange(n, dtype=np.int64)
    rows = np.concatenate([edges[:, 0], edges[:, 1], loops])
    cols = np.concatenate([edges[:, 1], edges[:, 0], loops])
    degree = np.bincount(rows, minlength=n).astype(np.float64)
    dinv = 1.0 / np.sqrt(degree)
    # same expression for (u, v) and (v, u), so the result is exactly symmetric
    values = dinv[rows] * dinv[cols]
    return SparseMatrix.from_coo(rows, cols, values, (n, n))


def gcn_normalize(g: Graph) -> SparseMatrix:
    return gcn_normalize_edges(g.n, g.edges)


def mean_adjacency(n: int, edges: np.ndarray) -> SparseMatrix:
    """Row-stochastic neighbor averaging; isolated nodes get an empty row."""
    edges = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
    rows = np.concatenate([edges[:, 0], edges[:, 1]])
    cols = np.concatenate([edges[:, 1], edges[:, 0]])
    degree = np.bincount(rows, minlength=n).astype(np.float64)
    return SparseMatrix.from_coo(rows, cols, 1.0 / degree[rows], (n, n))

"""
CSR sparse matrix used for message passing.
"""

from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np
import scipy.sparse as sp


@dataclass(frozen=True)
class SparseMatrix:
    """Immutable CSR matrix with sorted, duplicate-free column indices per row."""

    csr: sp.csr_matrix

    def __post_init__(self):
        csr = self.csr.tocsr().astype(np.float64)
        csr.sum_duplicates()
        csr.sort_indices()
        object.__setattr__(self, "csr", csr)

    @classmethod
    def from_coo(cls, rows: Sequence[int], cols: Sequence[int], values: Sequence[float],
                 shape: Tuple[int, int]) -> "SparseMatrix":
        matrix = sp.coo_matrix(
            (np.asarray(values, dtype=np.float64),
             (np.asarray(rows, dtype=np.int64), np.asarray(cols, dtype=np.int64))),
            shape=shape,
        )
        return cls(matrix.tocsr())

    @classmethod
    def identity(cls, n: int) -> "SparseMatrix":
        return cls(sp.identity(n, dtype=np.float64, format="csr"))

    @classmethod
    def empty(cls, rows: int, cols: int) -> "SparseMatrix":
        return cls(sp.csr_matrix((rows, cols), dtype=np.float64))

    @property
    def shape(self) -> Tuple[int, int]:
        return self.csr.shape

    @property
    def rows(self) -> int:
        return self.csr.shape[0]

    @property
    def cols(self) -> int:
        return self.csr.shape[1]

    @property
    def nnz(self) -> int:
        return int(self.csr.nnz)

    @property
    def row_offsets(self) -> np.ndarray:
        return self.csr.indptr

    @property
    def col_indices(self) -> np.ndarray:
        return self.csr.indices

    @property
    def values(self) -> np.ndarray:
        return self.csr.data

    def transpose(self) -> "SparseMatrix":
        return SparseMatrix(self.csr.transpose().tocsr())

    def to_dense(self) -> np.ndarray:
        return self.csr.toarray()

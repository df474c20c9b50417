from .sparse import SparseMatrix
from .tensor import Tape, Tensor, backward
from . import ops

__all__ = ["SparseMatrix", "Tape", "Tensor", "backward", "ops"]

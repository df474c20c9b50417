"""
Differentiable operations over `Tensor`.

Each op validates shapes, computes its forward value with numpy/scipy and
attaches a backward rule returning one gradient (or None) per parent.
"""

from typing import Optional, Sequence

import numpy as np
from scipy.special import expit, logsumexp

from ..core.exceptions import DimensionError, DomainError, IndexRangeError, ContractError
from .sparse import SparseMatrix
from .tensor import Tensor


def _same_shape(op: str, a: Tensor, b: Tensor) -> None:
    if a.shape != b.shape:
        raise DimensionError(op, a.shape, b.shape)


def _as_index(idx, limit: int, op: str) -> np.ndarray:
    arr = np.asarray(idx, dtype=np.int64).reshape(-1)
    if arr.size and (arr.min() < 0 or arr.max() >= limit):
        bad = int(arr[(arr < 0) | (arr >= limit)][0])
        raise IndexRangeError(f"{op}: index {bad} out of range [0, {limit})")
    return arr


# -- products -----------------------------------------------------------------

def matmul(a: Tensor, b: Tensor) -> Tensor:
    if a.cols != b.rows:
        raise DimensionError("matmul", a.shape, b.shape)

    def backward(g):
        return (g @ b.data.T if a.requires_grad else None,
                a.data.T @ g if b.requires_grad else None)

    return Tensor.from_op(a.data @ b.data, (a, b), backward, "matmul")


def spmm(s: SparseMatrix, x: Tensor) -> Tensor:
    if s.cols != x.rows:
        raise DimensionError("spmm", s.shape, x.shape)
    s_t = s.transpose().csr

    def backward(g):
        return (np.asarray(s_t @ g),)

    return Tensor.from_op(np.asarray(s.csr @ x.data), (x,), backward, "spmm")


def transpose(a: Tensor) -> Tensor:
    return Tensor.from_op(a.data.T.copy(), (a,), lambda g: (g.T,), "transpose")


# -- binary elementwise --------------------------------------------------------

def add(a: Tensor, b: Tensor) -> Tensor:
    _same_shape("add", a, b)
    return Tensor.from_op(a.data + b.data, (a, b), lambda g: (g, g), "add")


def sub(a: Tensor, b: Tensor) -> Tensor:
    _same_shape("sub", a, b)
    return Tensor.from_op(a.data - b.data, (a, b), lambda g: (g, -g), "sub")


def mul(a: Tensor, b: Tensor) -> Tensor:
    _same_shape("mul", a, b)

    def backward(g):
        return (g * b.data if a.requires_grad else None,
                g * a.data if b.requires_grad else None)

    return Tensor.from_op(a.data * b.data, (a, b), backward, "mul")


def add_row(a: Tensor, row: Tensor) -> Tensor:
    """Broadcast-add a 1 x cols row (bias) to every row of `a`."""
    if row.rows != 1 or row.cols != a.cols:
        raise DimensionError("add_row", a.shape, row.shape)
    return Tensor.from_op(a.data + row.data, (a, row),
                          lambda g: (g, g.sum(axis=0, keepdims=True)), "add_row")


def scale_rows(a: Tensor, col: Tensor) -> Tensor:
    """Multiply row i of `a` by col[i, 0]."""
    if col.cols != 1 or col.rows != a.rows:
        raise DimensionError("scale_rows", a.shape, col.shape)

    def backward(g):
        return (g * col.data if a.requires_grad else None,
                (g * a.data).sum(axis=1, keepdims=True) if col.requires_grad else None)

    return Tensor.from_op(a.data * col.data, (a, col), backward, "scale_rows")


def concat_cols(parts: Sequence[Tensor]) -> Tensor:
    parts = list(parts)
    if not parts:
        raise ContractError("concat_cols needs at least one tensor")
    rows = parts[0].rows
    for p in parts[1:]:
        if p.rows != rows:
            raise DimensionError("concat_cols", parts[0].shape, p.shape)
    bounds = np.cumsum([0] + [p.cols for p in parts])

    def backward(g):
        return tuple(g[:, bounds[i]:bounds[i + 1]] for i in range(len(parts)))

    return Tensor.from_op(np.concatenate([p.data for p in parts], axis=1), tuple(parts),
                          backward, "concat_cols")


# -- unary elementwise ---------------------------------------------------------

def relu(a: Tensor) -> Tensor:
    mask = a.data > 0
    return Tensor.from_op(np.where(mask, a.data, 0.0), (a,), lambda g: (g * mask,), "relu")


def leaky_relu(a: Tensor, slope: float = 0.2) -> Tensor:
    factor = np.where(a.data > 0, 1.0, slope)
    return Tensor.from_op(a.data * factor, (a,), lambda g: (g * factor,), "leaky_relu")


def sigmoid(a: Tensor) -> Tensor:
    out = expit(a.data)
    return Tensor.from_op(out, (a,), lambda g: (g * out * (1.0 - out),), "sigmoid")


def softplus(a: Tensor) -> Tensor:
    """log(1 + exp(a)), stable for large |a|."""
    out = np.logaddexp(0.0, a.data)
    return Tensor.from_op(out, (a,), lambda g: (g * expit(a.data),), "softplus")


def exp(a: Tensor) -> Tensor:
    out = np.exp(a.data)
    return Tensor.from_op(out, (a,), lambda g: (g * out,), "exp")


def log(a: Tensor) -> Tensor:
    if np.any(a.data <= 0):
        raise DomainError("log: input has nonpositive entries")
    return Tensor.from_op(np.log(a.data), (a,), lambda g: (g / a.data,), "log")


def scale(a: Tensor, factor: float) -> Tensor:
    return Tensor.from_op(a.data * factor, (a,), lambda g: (g * factor,), "scale")


def shift(a: Tensor, offset: float) -> Tensor:
    return Tensor.from_op(a.data + offset, (a,), lambda g: (g,), "shift")


def power(a: Tensor, exponent: float) -> Tensor:
    if np.any(a.data < 0):
        raise DomainError("power: base has negative entries")
    out = a.data ** exponent

    def backward(g):
        return (g * exponent * a.data ** (exponent - 1.0),)

    return Tensor.from_op(out, (a,), backward, "power")


def dropout(a: Tensor, keep_prob: float, rng: Optional[np.random.Generator],
            training: bool = True) -> Tensor:
    """Inverted dropout; identity outside training or when keep_prob == 1."""
    if not 0.0 < keep_prob <= 1.0:
        raise DomainError(f"dropout: keep_prob {keep_prob} outside (0, 1]")
    if not training or keep_prob == 1.0:
        return a
    if rng is None:
        raise ContractError("dropout in training mode needs an RNG stream")
    mask = (rng.random(a.shape) < keep_prob) / keep_prob
    return Tensor.from_op(a.data * mask, (a,), lambda g: (g * mask,), "dropout")


_BINARY = {"add": add, "sub": sub, "mul": mul}
_UNARY = {"relu": relu, "sigmoid": sigmoid, "exp": exp, "log": log,
          "softplus": softplus, "leaky_relu": leaky_relu}


def elementwise(kind: str, a: Tensor, b: Optional[Tensor] = None, **kwargs) -> Tensor:
    """Dispatch by name; `scale`/`shift`/`power` read `value`, dropout reads keep_prob/rng."""
    if kind in _BINARY:
        if b is None:
            raise ContractError(f"{kind} needs two operands")
        return _BINARY[kind](a, b)
    if kind in _UNARY:
        return _UNARY[kind](a, **kwargs)
    if kind == "scale":
        return scale(a, kwargs["value"])
    if kind == "shift":
        return shift(a, kwargs["value"])
    if kind == "power":
        return power(a, kwargs["value"])
    if kind == "dropout":
        return dropout(a, kwargs["keep_prob"], kwargs.get("rng"), kwargs.get("training", True))
    raise ContractError(f"unknown elementwise kind '{kind}'")


# -- reductions ----------------------------------------------------------------

def reduce(a: Tensor, kind: str = "sum", axis: str = "all") -> Tensor:
    if a.data.size == 0:
        raise DomainError(f"reduce {kind}: empty tensor")
    if kind not in ("sum", "mean") or axis not in ("all", "rows"):
        raise ContractError(f"reduce: unsupported kind={kind} axis={axis}")
    shape = a.shape
    if axis == "all":
        count = a.data.size if kind == "mean" else 1
        out = np.array([[a.data.sum() / count]])
        return Tensor.from_op(out, (a,), lambda g: (np.full(shape, g[0, 0] / count),),
                              f"{kind}_all")
    count = a.cols if kind == "mean" else 1
    out = a.data.sum(axis=1, keepdims=True) / count
    return Tensor.from_op(out, (a,), lambda g: (np.broadcast_to(g / count, shape).copy(),),
                          f"{kind}_rows")


def sum_all(a: Tensor) -> Tensor:
    return reduce(a, "sum", "all")


def mean_all(a: Tensor) -> Tensor:
    return reduce(a, "mean", "all")


def logsumexp_rows(a: Tensor) -> Tensor:
    out = logsumexp(a.data, axis=1, keepdims=True)

    def backward(g):
        return (np.exp(a.data - out) * g,)

    return Tensor.from_op(out, (a,), backward, "logsumexp_rows")


# -- indexing ------------------------------------------------------------------

def gather_rows(a: Tensor, idx) -> Tensor:
    index = _as_index(idx, a.rows, "gather_rows")
    rows = a.rows

    def backward(g):
        grad = np.zeros((rows, g.shape[1]))
        np.add.at(grad, index, g)
        return (grad,)

    return Tensor.from_op(a.data[index], (a,), backward, "gather_rows")


def scatter_add_rows(a: Tensor, idx, num_rows: int) -> Tensor:
    """Row i of `a` is added into output row idx[i]; the adjoint of gather_rows."""
    index = _as_index(idx, num_rows, "scatter_add_rows")
    if index.size != a.rows:
        raise DimensionError("scatter_add_rows", a.shape, (index.size, 1))
    out = np.zeros((num_rows, a.cols))
    np.add.at(out, index, a.data)
    return Tensor.from_op(out, (a,), lambda g: (g[index],), "scatter_add_rows")


def segment_softmax(scores: Tensor, segments, num_segments: int) -> Tensor:
    """Softmax of a column of scores within each segment id."""
    if scores.cols != 1:
        raise DimensionError("segment_softmax", scores.shape, (scores.rows, 1))
    seg = _as_index(segments, num_segments, "segment_softmax")
    if seg.size != scores.rows:
        raise DimensionError("segment_softmax", scores.shape, (seg.size, 1))
    values = scores.data[:, 0]
    peak = np.full(num_segments, -np.inf)
    np.maximum.at(peak, seg, values)
    e = np.exp(values - peak[seg])
    total = np.zeros(num_segments)
    np.add.at(total, seg, e)
    out = (e / total[seg]).reshape(-1, 1)

    def backward(g):
        weighted = np.zeros(num_segments)
        np.add.at(weighted, seg, out[:, 0] * g[:, 0])
        return (out * (g - weighted[seg].reshape(-1, 1)),)

    return Tensor.from_op(out, (scores,), backward, "segment_softmax")


# -- geometry ------------------------------------------------------------------

def normalize_rows(a: Tensor) -> Tensor:
    """Rows scaled to unit L2 norm; all-zero rows stay zero."""
    norms = np.sqrt((a.data * a.data).sum(axis=1, keepdims=True))
    safe = np.where(norms > 0, norms, 1.0)
    out = np.where(norms > 0, a.data / safe, 0.0)

    def backward(g):
        radial = (out * g).sum(axis=1, keepdims=True)
        return (np.where(norms > 0, (g - out * radial) / safe, 0.0),)

    return Tensor.from_op(out, (a,), backward, "normalize_rows")


def rowwise_cosine(a: Tensor, b: Tensor) -> Tensor:
    """Column of cos(a_i, b_i); a zero-norm row gives 0."""
    _same_shape("rowwise_cosine", a, b)
    return reduce(mul(normalize_rows(a), normalize_rows(b)), "sum", "rows")


def detach(a: Tensor) -> Tensor:
    return a.detach()

"""
Dense 2-D tensor with reverse-mode differentiation.

Every operation on a tensor that requires grad returns a node holding its
parents and a backward rule. `backward(loss)` walks those nodes once, in
reverse topological order, recorded on a `Tape` built for that call only.
"""

from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, List, Optional, Tuple

import numpy as np

from ..core.exceptions import ContractError, DimensionError

BackwardFn = Callable[[np.ndarray], Tuple[Optional[np.ndarray], ...]]


class Tensor:
    """A rows x cols float64 matrix, optionally tracked for gradients."""

    __slots__ = ("data", "requires_grad", "grad", "name", "op", "_parents", "_backward", "__weakref__")

    def __init__(self, data, requires_grad: bool = False, name: Optional[str] = None):
        arr = np.array(data, dtype=np.float64)
        if arr.ndim == 0:
            arr = arr.reshape(1, 1)
        elif arr.ndim == 1:
            arr = arr.reshape(1, -1)
        elif arr.ndim != 2:
            raise DimensionError("tensor", arr.shape)
        self.data = arr
        self.requires_grad = bool(requires_grad)
        self.grad: Optional[np.ndarray] = None
        self.name = name
        self.op = "leaf"
        self._parents: Tuple["Tensor", ...] = ()
        self._backward: Optional[BackwardFn] = None

    @classmethod
    def from_op(cls, data: np.ndarray, parents: Tuple["Tensor", ...], backward: BackwardFn,
                op: str) -> "Tensor":
        """Wrap an op result; the node is recorded only if a parent requires grad."""
        out = cls.__new__(cls)
        out.data = data
        out.grad = None
        out.name = None
        out.op = op
        if any(p.requires_grad for p in parents):
            out.requires_grad = True
            out._parents = parents
            out._backward = backward
        else:
            out.requires_grad = False
            out._parents = ()
            out._backward = None
        return out

    @classmethod
    def zeros(cls, rows: int, cols: int, requires_grad: bool = False) -> "Tensor":
        return cls(np.zeros((rows, cols)), requires_grad=requires_grad)

    @property
    def shape(self) -> Tuple[int, int]:
        return self.data.shape

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    def item(self) -> float:
        if self.data.size != 1:
            raise ContractError(f"item() needs a 1x1 tensor, got {self.rows}x{self.cols}")
        return float(self.data[0, 0])

    def detach(self) -> "Tensor":
        out = Tensor.__new__(Tensor)
        out.data = self.data
        out.requires_grad = False
        out.grad = None
        out.name = self.name
        out.op = "detach"
        out._parents = ()
        out._backward = None
        return out

    def __repr__(self):
        flag = ", requires_grad=True" if self.requires_grad else ""
        return f"Tensor(shape={self.rows}x{self.cols}, op={self.op}{flag})"

    # Operator sugar, resolved lazily to avoid a circular import with ops.
    def __add__(self, other):
        from . import ops
        if isinstance(other, Tensor):
            return ops.add(self, other)
        return ops.shift(self, float(other))

    def __radd__(self, other):
        return self.__add__(other)

    def __sub__(self, other):
        from . import ops
        if isinstance(other, Tensor):
            return ops.sub(self, other)
        return ops.shift(self, -float(other))

    def __rsub__(self, other):
        from . import ops
        return ops.shift(ops.scale(self, -1.0), float(other))

    def __mul__(self, other):
        from . import ops
        if isinstance(other, Tensor):
            return ops.mul(self, other)
        return ops.scale(self, float(other))

    def __rmul__(self, other):
        return self.__mul__(other)

    def __neg__(self):
        from . import ops
        return ops.scale(self, -1.0)

    def __matmul__(self, other):
        from . import ops
        return ops.matmul(self, other)


@dataclass
class Tape:
    """Operations reachable from one loss, parents before children."""

    records: List[Tensor] = field(default_factory=list)

    @classmethod
    def record(cls, loss: Tensor) -> "Tape":
        order: List[Tensor] = []
        visited = set()
        # iterative post-order DFS; deep encoders would overflow recursion
        stack = [(loss, False)]
        while stack:
            node, expanded = stack.pop()
            if expanded:
                order.append(node)
                continue
            if id(node) in visited:
                continue
            visited.add(id(node))
            stack.append((node, True))
            for parent in node._parents:
                if id(parent) not in visited:
                    stack.append((parent, False))
        return cls(order)

    def backward(self, seed: np.ndarray) -> Dict[int, np.ndarray]:
        grads: Dict[int, np.ndarray] = {id(self.records[-1]): seed}
        for node in reversed(self.records):
            upstream = grads.get(id(node))
            if upstream is None or node._backward is None:
                continue
            for parent, g in zip(node._parents, node._backward(upstream)):
                if g is None or not parent.requires_grad:
                    continue
                key = id(parent)
                if key in grads:
                    grads[key] = grads[key] + g
                else:
                    grads[key] = g
        return grads


def backward(loss: Tensor, inputs: Iterable[Tensor] = ()) -> Dict[Tensor, np.ndarray]:
    """
    Populate `.grad` of every requires-grad leaf reachable from `loss`.

    Tensors listed in `inputs` that the loss does not reach get a zero grad.
    Returns a map from each graded leaf (and each listed input) to its grad.
    """
    if loss.shape != (1, 1):
        raise ContractError(f"backward needs a scalar loss, got {loss.rows}x{loss.cols}")
    inputs = list(inputs)
    result: Dict[Tensor, np.ndarray] = {}
    for t in inputs:
        t.grad = np.zeros_like(t.data)
        result[t] = t.grad
    if not loss.requires_grad:
        return result

    tape = Tape.record(loss)
    grads = tape.backward(np.ones((1, 1)))
    for node in tape.records:
        if node._parents or not node.requires_grad:
            continue
        node.grad = grads.get(id(node), np.zeros_like(node.data))
        result[node] = node.grad
    return result

"""
Central finite-difference checks for the autograd engine.
"""

from typing import Callable, List, Sequence

import numpy as np

from .tensor import Tensor, backward


def numerical_gradients(fn: Callable[[], Tensor], inputs: Sequence[Tensor],
                        h: float = 1e-5) -> List[np.ndarray]:
    """d fn() / d input by central differences, perturbing each entry in place."""
    grads = []
    for t in inputs:
        grad = np.zeros_like(t.data)
        it = np.nditer(t.data, flags=["multi_index"])
        for _ in it:
            idx = it.multi_index
            original = t.data[idx]
            t.data[idx] = original + h
            upper = fn().item()
            t.data[idx] = original - h
            lower = fn().item()
            t.data[idx] = original
            grad[idx] = (upper - lower) / (2.0 * h)
        grads.append(grad)
    return grads


def relative_error(analytic: np.ndarray, numeric: np.ndarray) -> float:
    # floor keeps exactly-zero gradients from dividing noise by noise
    denom = max(np.linalg.norm(analytic) + np.linalg.norm(numeric), 1e-6)
    return float(np.linalg.norm(analytic - numeric) / denom)


def check_gradients(fn: Callable[[], Tensor], inputs: Sequence[Tensor], h: float = 1e-5) -> float:
    """Largest relative error between reverse-mode and numerical gradients over `inputs`."""
    backward(fn(), inputs)
    analytic = [t.grad.copy() for t in inputs]
    numeric = numerical_gradients(fn, inputs, h)
    return max(relative_error(a, n) for a, n in zip(analytic, numeric))

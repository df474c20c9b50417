"""
Named parameter store shared by encoder, decoder and mask token.
"""

from typing import Dict, Iterator, List, Optional, Tuple

import numpy as np

from ..core.exceptions import ContractError
from ..tensor import Tensor


def glorot_uniform(rng: np.random.Generator, fan_in: int, fan_out: int) -> np.ndarray:
    limit = np.sqrt(6.0 / (fan_in + fan_out))
    return rng.uniform(-limit, limit, size=(fan_in, fan_out))


class ParamStore:
    """Insertion-ordered map of parameter name to trainable Tensor."""

    def __init__(self):
        self._params: Dict[str, Tensor] = {}

    def add(self, name: str, value) -> Tensor:
        if name in self._params:
            raise ContractError(f"parameter '{name}' already registered")
        tensor = Tensor(value, requires_grad=True, name=name)
        self._params[name] = tensor
        return tensor

    def add_weight(self, name: str, rng: np.random.Generator, fan_in: int, fan_out: int) -> Tensor:
        return self.add(name, glorot_uniform(rng, fan_in, fan_out))

    def add_zeros(self, name: str, rows: int, cols: int) -> Tensor:
        return self.add(name, np.zeros((rows, cols)))

    def __getitem__(self, name: str) -> Tensor:
        try:
            return self._params[name]
        except KeyError:
            raise ContractError(f"unknown parameter '{name}'") from None

    def get(self, name: str) -> Optional[Tensor]:
        return self._params.get(name)

    def __contains__(self, name: str) -> bool:
        return name in self._params

    def __iter__(self) -> Iterator[str]:
        return iter(self._params)

    def __len__(self) -> int:
        return len(self._params)

    def items(self) -> List[Tuple[str, Tensor]]:
        return list(self._params.items())

    def tensors(self) -> List[Tensor]:
        return list(self._params.values())

    def snapshot(self) -> Dict[str, np.ndarray]:
        """Copies of the current values, by name."""
        return {name: t.data.copy() for name, t in self._params.items()}

    def load(self, values: Dict[str, np.ndarray]) -> None:
        for name, value in values.items():
            target = self[name]
            if target.shape != np.shape(value):
                raise ContractError(f"parameter '{name}': shape {np.shape(value)} != {target.shape}")
            target.data[...] = value

    def num_values(self) -> int:
        return int(sum(t.data.size for t in self._params.values()))

from abc import ABC
from typing import Dict, Iterator, Tuple

import numpy as np

from src.errors import ShapeError
from src.tensor import Tensor


class Module(ABC):
    """
    Container of named trainable tensors.

    Subclasses register parameters with `_register` in a fixed order; that
    order defines initialization draws, optimizer state layout and the
    checkpoint tensor table.
    """

    def __init__(self, prefix: str):
        self.prefix = prefix
        self._parameters: Dict[str, Tensor] = {}
        self._children: Dict[str, "Module"] = {}

    def _register(self, name: str, value: np.ndarray) -> Tensor:
        full_name = f"{self.prefix}.{name}"
        tensor = Tensor(value, requires_grad=True, name=full_name)
        self._parameters[full_name] = tensor
        return tensor

    def _add_child(self, module: "Module") -> "Module":
        self._children[module.prefix] = module
        return module

    def named_parameters(self) -> Iterator[Tuple[str, Tensor]]:
        yield from self._parameters.items()
        for child in self._children.values():
            yield from child.named_parameters()

    def parameters(self) -> Dict[str, Tensor]:
        return dict(self.named_parameters())

    def load_arrays(self, arrays: Dict[str, np.ndarray]) -> None:
        """Replace parameter values in place; names and dims must match exactly."""
        params = self.parameters()
        missing = set(params) - set(arrays)
        unexpected = set(arrays) - set(params)
        if missing or unexpected:
            raise ShapeError(
                f"Parameter names do not match: missing {sorted(missing)}, "
                f"unexpected {sorted(unexpected)}"
            )
        for name, tensor in params.items():
            value = np.asarray(arrays[name], dtype=np.float64)
            if value.shape != tensor.dims:
                raise ShapeError(
                    f"Parameter {name}: expected dims {tensor.dims}, got {value.shape}"
                )
            tensor.data = np.ascontiguousarray(value)


def glorot_uniform(
    rng: np.random.Generator, shape: Tuple[int, ...], fan_in: int, fan_out: int
) -> np.ndarray:
    bound = np.sqrt(6.0 / (fan_in + fan_out))
    return rng.uniform(-bound, bound, size=shape)

from abc import ABC, abstractmethod
from typing import Dict

import numpy as np

from src.errors import ShapeError
from src.tensor import Tensor


class Optimizer(ABC):
    """
    Abstract base class for parameter update rules.

    Optimizers own their per-parameter state and update `Tensor.data` in place,
    keyed by parameter name so state survives across steps.
    """

    def __init__(self, learning_rate: float):
        if learning_rate < 0:
            raise ValueError(f"learning_rate must be non-negative, got {learning_rate}")
        self.learning_rate = learning_rate
        self.iterations = 0

    def step(self, params: Dict[str, Tensor], grads: Dict[str, np.ndarray]) -> None:
        """
        Apply one update to every parameter.

        Args:
            params: Named parameters to update in place
            grads: Gradient for every parameter name, same dims as the parameter

        Raises:
            ShapeError: If a gradient is missing or its dims differ from the parameter
        """
        for name, tensor in params.items():
            if name not in grads:
                raise ShapeError(f"Missing gradient for parameter {name}")
            if grads[name].shape != tensor.dims:
                raise ShapeError(
                    f"Gradient for {name} has dims {grads[name].shape}, parameter has {tensor.dims}"
                )
        self.iterations += 1
        for name, tensor in params.items():
            tensor.data = self._update(name, tensor.data, grads[name])

    @abstractmethod
    def _update(self, name: str, value: np.ndarray, grad: np.ndarray) -> np.ndarray:
        """Return the new value for one parameter."""
        raise NotImplementedError

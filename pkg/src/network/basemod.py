"""BaseMod: global average pooling followed by a ReLU MLP giving g(x)."""
import numpy as np

from src.attributes import NUM_ATTRIBUTES
from src.models import BaseModConfig
from src.tensor import Tensor, activation, global_average_pool, linear

from .base import Module, glorot_uniform


class BaseMod(Module):
    def __init__(self, config: BaseModConfig, in_features: int, rng: np.random.Generator):
        super().__init__("basemod")
        self.config = config
        self.layers = []

        width = in_features
        for i in range(config.hidden_layers):
            self.layers.append(self._dense(f"hidden{i}", width, config.hidden, rng))
            width = config.hidden
        self.output = self._dense("output", width, NUM_ATTRIBUTES, rng)

    def _dense(self, name: str, n_in: int, n_out: int, rng: np.random.Generator):
        weight = self._register(f"{name}.weight", glorot_uniform(rng, (n_out, n_in), n_in, n_out))
        bias = self._register(f"{name}.bias", np.zeros(n_out))
        return weight, bias

    def __call__(self, features: Tensor) -> Tensor:
        """Raw attribute scores g(x); callers apply Sigmoid or Tanh."""
        out = global_average_pool(features)
        for weight, bias in self.layers:
            out = activation("relu", linear(out, weight, bias))
        weight, bias = self.output
        return linear(out, weight, bias)

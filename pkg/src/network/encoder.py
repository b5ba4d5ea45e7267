"""VGG-style convolutional encoder producing the feature map f(x)."""
import numpy as np

from src.errors import ShapeError
from src.models import EncoderConfig
from src.tensor import Tensor, activation, conv2d, maxpool2d

from .base import Module, glorot_uniform

KERNEL_SIZE = 3


class Encoder(Module):
    """Blocks of 3x3 same-padded conv + ReLU, each followed by 2x2 max pooling."""

    def __init__(self, config: EncoderConfig, rng: np.random.Generator):
        super().__init__("encoder")
        self.config = config
        self.layers = []

        in_channels = config.in_channels
        for b, (out_channels, conv_count) in enumerate(config.blocks):
            block = []
            for c in range(conv_count):
                fan_in = in_channels * KERNEL_SIZE * KERNEL_SIZE
                fan_out = out_channels * KERNEL_SIZE * KERNEL_SIZE
                shape = (out_channels, in_channels, KERNEL_SIZE, KERNEL_SIZE)
                weight = self._register(
                    f"block{b}.conv{c}.weight", glorot_uniform(rng, shape, fan_in, fan_out)
                )
                bias = self._register(f"block{b}.conv{c}.bias", np.zeros(out_channels))
                block.append((weight, bias))
                in_channels = out_channels
            self.layers.append(block)

    @property
    def input_shape(self):
        return (self.config.in_channels, self.config.input_height, self.config.input_width)

    def __call__(self, x: Tensor) -> Tensor:
        if x.dims != self.input_shape:
            raise ShapeError(f"Encoder expects input {self.input_shape}, got {x.dims}")
        out = x
        for block in self.layers:
            for weight, bias in block:
                out = activation("relu", conv2d(out, weight, bias, padding="same"))
            out = maxpool2d(out)
        return out

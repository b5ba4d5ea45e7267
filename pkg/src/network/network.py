"""The joint network: encoder -> f(x); BaseMod -> g(x); ProtoMod -> h(x) and similarity maps."""
import logging
from dataclasses import dataclass
from typing import Dict, Tuple

import numpy as np

from src.audio import MelSpectrogram
from src.models import BaseModConfig, EncoderConfig
from src.tensor import Tensor

from .base import Module
from .basemod import BaseMod
from .encoder import Encoder
from .protomod import ProtoMod

logger = logging.getLogger(__name__)


@dataclass
class ForwardOutput:
    g: Tensor
    h: Tensor
    maps: Tensor
    features: Tensor
    argmax: np.ndarray


class SAVNet(Module):
    """
    Encoder shared by the global (BaseMod) and local (ProtoMod) branches.

    Parameters are drawn in registration order from a single generator seeded
    with `seed`: encoder convs, BaseMod layers, then prototypes.
    """

    def __init__(self, encoder: EncoderConfig, basemod: BaseModConfig, seed: int = 0):
        super().__init__("savnet")
        self.encoder_config = encoder
        self.basemod_config = basemod
        self.seed = seed

        rng = np.random.default_rng(seed)
        channels, height, width = encoder.output_shape()
        self.encoder = self._add_child(Encoder(encoder, rng))
        self.basemod = self._add_child(BaseMod(basemod, channels, rng))
        self.protomod = self._add_child(ProtoMod(channels, rng))
        logger.debug(
            f"Initialized SAVNet (seed={seed}): feature map {channels}x{height}x{width}, "
            f"{self.parameter_count():,} parameters"
        )

    def parameter_count(self) -> int:
        return sum(t.size for _, t in self.named_parameters())

    @property
    def prototypes(self) -> Tensor:
        return self.protomod.prototypes

    def encode(self, x: Tensor) -> Tensor:
        return self.encoder(x)

    def basemod_forward(self, features: Tensor) -> Tensor:
        return self.basemod(features)

    def protomod_forward(self, features: Tensor) -> Tuple[Tensor, Tensor, np.ndarray]:
        return self.protomod(features)

    def forward(self, x: Tensor) -> ForwardOutput:
        """Encoder output feeds both branches; one tape carries both gradients into the encoder."""
        features = self.encode(x)
        g = self.basemod_forward(features)
        h, maps, argmax = self.protomod_forward(features)
        return ForwardOutput(g=g, h=h, maps=maps, features=features, argmax=argmax)

    def __call__(self, x: Tensor) -> ForwardOutput:
        return self.forward(x)

    def forward_mel(self, mel: MelSpectrogram) -> ForwardOutput:
        """Forward pass on the per-clip standardized log-mel."""
        return self.forward(Tensor(mel.standardized()))

    def arrays(self) -> Dict[str, np.ndarray]:
        return {name: tensor.data for name, tensor in self.named_parameters()}


def init_params(encoder: EncoderConfig, basemod: BaseModConfig, seed: int) -> SAVNet:
    """Build a freshly initialized network; identical seeds give bitwise identical parameters."""
    return SAVNet(encoder, basemod, seed=seed)

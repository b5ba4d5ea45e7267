"""ProtoMod: attribute prototypes matched against every local feature."""
from typing import Tuple

import numpy as np

from src.attributes import NUM_ATTRIBUTES
from src.errors import ShapeError
from src.tensor import Tensor, matmul, reshape, spatial_max

from .base import Module


def similarity_maps(features: Tensor, prototypes: Tensor) -> Tensor:
    """M[k, i, j] = <p_k, f_ij(x)>, shape [K, H, W]."""
    c, h, w = features.dims
    if prototypes.dims[1] != c:
        raise ShapeError(
            f"Prototypes {prototypes.dims} do not match feature channels {features.dims}"
        )
    flat = matmul(prototypes, reshape(features, (c, h * w)))
    return reshape(flat, (prototypes.dims[0], h, w))


class ProtoMod(Module):
    def __init__(self, channels: int, rng: np.random.Generator):
        super().__init__("protomod")
        self.prototypes = self._register(
            "prototypes", rng.normal(0.0, 1.0 / np.sqrt(channels), size=(NUM_ATTRIBUTES, channels))
        )

    def __call__(self, features: Tensor) -> Tuple[Tensor, Tensor, np.ndarray]:
        """
        Returns:
            h(x) of shape [K], the similarity maps [K, H, W] and the argmax
            (row, col) of each map, shape [K, 2]
        """
        maps = similarity_maps(features, self.prototypes)
        scores, locations = spatial_max(maps)
        return scores, maps, locations

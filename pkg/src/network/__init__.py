"""Encoder, BaseMod and ProtoMod."""
from .basemod import BaseMod
from .encoder import Encoder
from .network import ForwardOutput, SAVNet, init_params
from .protomod import ProtoMod, similarity_maps

__all__ = [
    "BaseMod",
    "Encoder",
    "ForwardOutput",
    "ProtoMod",
    "SAVNet",
    "init_params",
    "similarity_maps",
]

"""Tensor arithmetic with taped reverse-mode gradients."""
from .gradcheck import check_gradients, numerical_gradient, relative_error
from .ops import (
    activation,
    add,
    conv2d,
    global_average_pool,
    linear,
    matmul,
    maxpool2d,
    mean,
    reshape,
    scale,
    spatial_max,
)
from .tensor import Function, GradientTape, Tensor, current_tape

__all__ = [
    "Tensor",
    "Function",
    "GradientTape",
    "current_tape",
    "activation",
    "add",
    "conv2d",
    "global_average_pool",
    "linear",
    "matmul",
    "maxpool2d",
    "mean",
    "reshape",
    "scale",
    "spatial_max",
    "check_gradients",
    "numerical_gradient",
    "relative_error",
]

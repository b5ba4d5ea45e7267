"""
Differentiable operations used by the network.

All operations act on a single sample (no batch axis). Convolution stride is
fixed at 1 and max pooling uses a 2x2 window with stride 2.
"""
from typing import List, Literal, Tuple

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view
from scipy.special import expit

from src.errors import ShapeError

from .tensor import Function, Tensor

Padding = Literal["same", "valid"]
ActivationKind = Literal["relu", "tanh", "sigmoid"]


def _same_padding(kernel: int) -> Tuple[int, int]:
    before = (kernel - 1) // 2
    return before, kernel - 1 - before


class Conv2d(Function):
    def forward(self, x, kernels, bias, padding: Padding = "same"):
        cin, _, _ = x.shape
        cout, kcin, kh, kw = kernels.shape
        if kcin != cin:
            raise ShapeError(
                f"conv2d channel mismatch: input {x.shape} vs kernels {kernels.shape}"
            )
        if bias.shape != (cout,):
            raise ShapeError(f"conv2d bias {bias.shape} does not match kernels {kernels.shape}")

        if padding == "same":
            top, bottom = _same_padding(kh)
            left, right = _same_padding(kw)
            x = np.pad(x, ((0, 0), (top, bottom), (left, right)))
            self.pads = (top, bottom, left, right)
        elif padding == "valid":
            self.pads = (0, 0, 0, 0)
        else:
            raise ValueError(f"Unsupported padding: {padding}")

        _, hp, wp = x.shape
        if kh > hp or kw > wp:
            raise ShapeError(
                f"conv2d kernels {kernels.shape} larger than padded input {x.shape}"
            )

        out_h, out_w = hp - kh + 1, wp - kw + 1
        # (cin, out_h, out_w, kh, kw) -> (cin * kh * kw, out_h * out_w)
        windows = sliding_window_view(x, (kh, kw), axis=(1, 2))
        cols = windows.transpose(0, 3, 4, 1, 2).reshape(cin * kh * kw, out_h * out_w)

        self.cols = cols
        self.kernels = kernels
        self.padded_shape = x.shape
        self.out_hw = (out_h, out_w)

        out = kernels.reshape(cout, -1) @ cols + bias[:, None]
        return out.reshape(cout, out_h, out_w)

    def backward(self, grad):
        cout, cin, kh, kw = self.kernels.shape
        out_h, out_w = self.out_hw
        grad_mat = grad.reshape(cout, out_h * out_w)

        grad_kernels = (grad_mat @ self.cols.T).reshape(self.kernels.shape)
        grad_bias = grad_mat.sum(axis=1)

        grad_cols = (self.kernels.reshape(cout, -1).T @ grad_mat).reshape(cin, kh, kw, out_h, out_w)
        grad_padded = np.zeros(self.padded_shape)
        for i in range(kh):
            for j in range(kw):
                grad_padded[:, i:i + out_h, j:j + out_w] += grad_cols[:, i, j]

        top, bottom, left, right = self.pads
        _, hp, wp = self.padded_shape
        grad_input = grad_padded[:, top:hp - bottom, left:wp - right]
        return grad_input, grad_kernels, grad_bias


class MaxPool2d(Function):
    def forward(self, x):
        c, h, w = x.shape
        if h < 2 or w < 2:
            raise ShapeError(f"maxpool2d input {x.shape} smaller than the 2x2 window")
        oh, ow = h // 2, w // 2
        blocks = x[:, :2 * oh, :2 * ow].reshape(c, oh, 2, ow, 2).transpose(0, 1, 3, 2, 4)
        flat = blocks.reshape(c, oh, ow, 4)
        # np.argmax returns the first maximum in row-major window order
        self.argmax = flat.argmax(axis=-1)
        self.input_shape = x.shape
        return np.take_along_axis(flat, self.argmax[..., None], axis=-1)[..., 0]

    def backward(self, grad):
        c, h, w = self.input_shape
        oh, ow = grad.shape[1:]
        routed = np.zeros((c, oh, ow, 4))
        np.put_along_axis(routed, self.argmax[..., None], grad[..., None], axis=-1)
        routed = routed.reshape(c, oh, ow, 2, 2).transpose(0, 1, 3, 2, 4).reshape(c, 2 * oh, 2 * ow)
        grad_input = np.zeros(self.input_shape)
        grad_input[:, :2 * oh, :2 * ow] = routed
        return (grad_input,)


class Linear(Function):
    def forward(self, x, weight, bias):
        if weight.ndim != 2 or weight.shape[1] != x.shape[0] or bias.shape != (weight.shape[0],):
            raise ShapeError(
                f"linear shape mismatch: input {x.shape}, weight {weight.shape}, bias {bias.shape}"
            )
        self.x = x
        self.weight = weight
        return weight @ x + bias

    def backward(self, grad):
        return self.weight.T @ grad, np.outer(grad, self.x), grad


class Relu(Function):
    def forward(self, x):
        self.mask = x > 0
        return np.where(self.mask, x, 0.0)

    def backward(self, grad):
        return (grad * self.mask,)


class Tanh(Function):
    def forward(self, x):
        self.out = np.tanh(x)
        return self.out

    def backward(self, grad):
        return (grad * (1.0 - self.out ** 2),)


class Sigmoid(Function):
    def forward(self, x):
        self.out = expit(x)
        return self.out

    def backward(self, grad):
        return (grad * self.out * (1.0 - self.out),)


class GlobalAveragePool(Function):
    def forward(self, x):
        if x.ndim != 3:
            raise ShapeError(f"global_average_pool expects [C,H,W], got {x.shape}")
        self.input_shape = x.shape
        return x.mean(axis=(1, 2))

    def backward(self, grad):
        c, h, w = self.input_shape
        return (np.broadcast_to(grad[:, None, None] / (h * w), self.input_shape).copy(),)


class MatMul(Function):
    def forward(self, a, b):
        if a.ndim != 2 or b.ndim not in (1, 2) or a.shape[1] != b.shape[0]:
            raise ShapeError(f"matmul shape mismatch: {a.shape} @ {b.shape}")
        self.a = a
        self.b = b
        return a @ b

    def backward(self, grad):
        if self.b.ndim == 1:
            return np.outer(grad, self.b), self.a.T @ grad
        return grad @ self.b.T, self.a.T @ grad


class Reshape(Function):
    def forward(self, x, dims: Tuple[int, ...] = ()):
        self.input_shape = x.shape
        try:
            return x.reshape(dims)
        except ValueError as e:
            raise ShapeError(f"cannot reshape {x.shape} to {dims}") from e

    def backward(self, grad):
        return (grad.reshape(self.input_shape),)


class SpatialMax(Function):
    def forward(self, x):
        if x.ndim != 3:
            raise ShapeError(f"spatial_max expects [K,H,W], got {x.shape}")
        k = x.shape[0]
        flat = x.reshape(k, -1)
        self.argmax = flat.argmax(axis=1)
        self.input_shape = x.shape
        return flat[np.arange(k), self.argmax]

    def backward(self, grad):
        k = self.input_shape[0]
        routed = np.zeros((k, self.input_shape[1] * self.input_shape[2]))
        routed[np.arange(k), self.argmax] = grad
        return (routed.reshape(self.input_shape),)


class Add(Function):
    def forward(self, a, b):
        if a.shape != b.shape:
            raise ShapeError(f"add shape mismatch: {a.shape} vs {b.shape}")
        return a + b

    def backward(self, grad):
        return grad, grad


class Scale(Function):
    def forward(self, x, factor: float = 1.0):
        self.factor = factor
        return x * factor

    def backward(self, grad):
        return (grad * self.factor,)


def conv2d(x: Tensor, kernels: Tensor, bias: Tensor, padding: Padding = "same") -> Tensor:
    """
    Cross-correlate a [Cin,H,W] input with [Cout,Cin,kh,kw] kernels at stride 1.

    Raises:
        ShapeError: If channels disagree or the kernel exceeds the padded input
    """
    if x.ndim != 3 or kernels.ndim != 4:
        raise ShapeError(
            f"conv2d expects [Cin,H,W] and [Cout,Cin,kh,kw], got {x.dims} and {kernels.dims}"
        )
    return Conv2d.apply(x, kernels, bias, padding=padding)


def maxpool2d(x: Tensor) -> Tensor:
    """2x2 max pooling at stride 2; a trailing odd row/column is dropped."""
    if x.ndim != 3:
        raise ShapeError(f"maxpool2d expects [C,H,W], got {x.dims}")
    return MaxPool2d.apply(x)


def linear(x: Tensor, weight: Tensor, bias: Tensor) -> Tensor:
    return Linear.apply(x, weight, bias)


_ACTIVATIONS = {"relu": Relu, "tanh": Tanh, "sigmoid": Sigmoid}


def activation(kind: ActivationKind, x: Tensor) -> Tensor:
    try:
        function = _ACTIVATIONS[kind]
    except KeyError:
        raise ValueError(
            f"Unsupported activation: {kind}. Supported: relu, tanh, sigmoid"
        ) from None
    return function.apply(x)


def global_average_pool(x: Tensor) -> Tensor:
    """Per-channel spatial mean of a [C,H,W] map."""
    return GlobalAveragePool.apply(x)


def matmul(a: Tensor, b: Tensor) -> Tensor:
    return MatMul.apply(a, b)


def reshape(x: Tensor, dims: Tuple[int, ...]) -> Tensor:
    return Reshape.apply(x, dims=tuple(dims))


def spatial_max(x: Tensor) -> Tuple[Tensor, np.ndarray]:
    """
    Maximum over the spatial axes of a [K,H,W] map.

    Returns:
        The [K] maxima and the (row, col) location of each, shape [K, 2].
        Ties resolve to the first location in row-major order, which is also
        the only location that receives gradient.
    """
    out = SpatialMax.apply(x)
    flat_index = x.data.reshape(x.dims[0], -1).argmax(axis=1)
    locations = np.stack(np.unravel_index(flat_index, x.dims[1:]), axis=1)
    return out, locations


def add(a: Tensor, b: Tensor) -> Tensor:
    return Add.apply(a, b)


def scale(x: Tensor, factor: float) -> Tensor:
    return Scale.apply(x, factor=float(factor))


def mean(tensors: List[Tensor]) -> Tensor:
    """Mean of equally shaped tensors, composed from `add` and `scale`."""
    if not tensors:
        raise ShapeError("mean of an empty tensor list")
    total = tensors[0]
    for t in tensors[1:]:
        total = add(total, t)
    return scale(total, 1.0 / len(tensors))

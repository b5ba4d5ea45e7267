"""Dense tensors, differentiable functions and the gradient tape."""
import threading
from abc import ABC, abstractmethod
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from src.errors import NonFiniteError, ShapeError

MAX_RANK = 4

_local = threading.local()


class Tensor:
    """
    Row-major array of 64-bit floats with an optional gradient requirement.

    Scalars (losses) are rank 0; everything else is rank 1-4.
    Every value must be finite; construction fails otherwise.
    """

    def __init__(self, data: Any, requires_grad: bool = False, name: Optional[str] = None):
        array = np.ascontiguousarray(data, dtype=np.float64)
        if array.ndim > MAX_RANK:
            raise ShapeError(f"Tensor rank {array.ndim} exceeds {MAX_RANK}: dims {array.shape}")
        if not np.isfinite(array).all():
            raise NonFiniteError(
                f"Tensor{' ' + name if name else ''} with dims {array.shape} "
                "holds non-finite values"
            )
        self.data = array
        self.requires_grad = requires_grad
        self.name = name

    @property
    def dims(self) -> Tuple[int, ...]:
        return self.data.shape

    @property
    def ndim(self) -> int:
        return self.data.ndim

    @property
    def size(self) -> int:
        return self.data.size

    def numpy(self) -> np.ndarray:
        return self.data

    def item(self) -> float:
        if self.data.size != 1:
            raise ShapeError(f"item() needs a single-element tensor, got dims {self.dims}")
        return float(self.data.reshape(-1)[0])

    def __repr__(self) -> str:
        label = f" name={self.name!r}" if self.name else ""
        return f"Tensor(dims={self.dims}, requires_grad={self.requires_grad}{label})"


class Function(ABC):
    """
    Base class for differentiable operations.

    `forward` receives the input arrays and may stash whatever the backward pass
    needs on `self`. `backward` receives dL/d(output) and returns one gradient
    array per input (None where an input needs none).
    """

    @abstractmethod
    def forward(self, *arrays: np.ndarray, **kwargs: Any) -> np.ndarray:
        raise NotImplementedError

    @abstractmethod
    def backward(self, grad: np.ndarray) -> Tuple[Optional[np.ndarray], ...]:
        raise NotImplementedError

    @classmethod
    def apply(cls, *inputs: Tensor, **kwargs: Any) -> Tensor:
        """Run the forward pass and record it on the active tape when gradients are needed."""
        function = cls()
        out_data = function.forward(*(t.data for t in inputs), **kwargs)
        requires_grad = any(t.requires_grad for t in inputs)
        out = Tensor(out_data, requires_grad=requires_grad, name=cls.__name__)

        tape = current_tape()
        if tape is not None and requires_grad:
            tape.record(function, inputs, out)
        return out


class _Record:
    __slots__ = ("function", "inputs", "output")

    def __init__(self, function: Function, inputs: Sequence[Tensor], output: Tensor):
        self.function = function
        self.inputs = tuple(inputs)
        self.output = output


class GradientTape:
    """
    Ordered record of executed operations.

    A tape is single-owner: it becomes active for the current thread inside its
    `with` block and records every operation whose inputs require gradients.
    Other threads keep their own tapes.

    Example:
        >>> with GradientTape() as tape:
        ...     loss = some_scalar_op(weight)
        >>> (grad,) = tape.gradient(loss, [weight])
    """

    def __init__(self):
        self._records: List[_Record] = []

    def __enter__(self) -> "GradientTape":
        stack = _tape_stack()
        stack.append(self)
        return self

    def __exit__(self, exc_type, exc_val, exc_tb):
        stack = _tape_stack()
        if stack and stack[-1] is self:
            stack.pop()

    def __len__(self) -> int:
        return len(self._records)

    def record(self, function: Function, inputs: Sequence[Tensor], output: Tensor) -> None:
        self._records.append(_Record(function, inputs, output))

    def gradient(self, target: Tensor, sources: Sequence[Tensor]) -> List[np.ndarray]:
        """
        Replay the tape backwards from a scalar target.

        Args:
            target: Scalar tensor produced while this tape was active
            sources: Tensors to differentiate with respect to

        Returns:
            One gradient array per source (zeros where the target does not depend on it)
        """
        if target.size != 1:
            raise ShapeError(f"Gradient target must be scalar, got dims {target.dims}")

        grads: Dict[int, np.ndarray] = {id(target): np.ones_like(target.data)}
        for record in reversed(self._records):
            grad_out = grads.get(id(record.output))
            if grad_out is None:
                continue
            input_grads = record.function.backward(grad_out)
            for tensor, grad in zip(record.inputs, input_grads):
                if grad is None or not tensor.requires_grad:
                    continue
                key = id(tensor)
                if key in grads:
                    grads[key] = grads[key] + grad
                else:
                    grads[key] = grad

        return [
            grads[id(s)] if id(s) in grads else np.zeros_like(s.data)
            for s in sources
        ]


def _tape_stack() -> List[GradientTape]:
    stack = getattr(_local, "tapes", None)
    if stack is None:
        stack = []
        _local.tapes = stack
    return stack


def current_tape() -> Optional[GradientTape]:
    """Innermost active tape of the calling thread, if any."""
    stack = _tape_stack()
    return stack[-1] if stack else None

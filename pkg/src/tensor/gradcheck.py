"""Central finite-difference checks for taped gradients."""
import logging
from typing import Callable, Dict, Optional, Sequence

import numpy as np

from .tensor import GradientTape, Tensor

logger = logging.getLogger(__name__)

DEFAULT_EPSILON = 1e-5


def numerical_gradient(
    fn: Callable[[], Tensor],
    tensor: Tensor,
    epsilon: float = DEFAULT_EPSILON,
    indices: Optional[Sequence[int]] = None,
) -> np.ndarray:
    """
    Estimate d fn() / d tensor by central differences.

    `tensor.data` is perturbed in place and restored after every evaluation.

    Args:
        fn: Zero-argument function returning a scalar tensor
        tensor: Tensor whose entries are perturbed
        epsilon: Half-width of the difference stencil
        indices: Flat indices to check (all entries when omitted)

    Returns:
        Array shaped like `tensor` with estimates at checked indices and NaN elsewhere
    """
    flat = tensor.data.reshape(-1)
    estimate = np.full(flat.shape, np.nan)
    checked = range(flat.size) if indices is None else indices
    for i in checked:
        original = flat[i]
        flat[i] = original + epsilon
        plus = fn().item()
        flat[i] = original - epsilon
        minus = fn().item()
        flat[i] = original
        estimate[i] = (plus - minus) / (2.0 * epsilon)
    return estimate.reshape(tensor.dims)


def relative_error(analytic: np.ndarray, numeric: np.ndarray) -> float:
    """||a - n|| / (||a|| + ||n||) over checked (non-NaN) entries; 0 when both vanish."""
    mask = ~np.isnan(numeric)
    a = analytic[mask]
    n = numeric[mask]
    denom = np.linalg.norm(a) + np.linalg.norm(n)
    if denom < 1e-300:
        return 0.0
    return float(np.linalg.norm(a - n) / denom)


def check_gradients(
    fn: Callable[[], Tensor],
    tensors: Dict[str, Tensor],
    epsilon: float = DEFAULT_EPSILON,
    max_entries: Optional[int] = None,
    seed: int = 0,
) -> Dict[str, float]:
    """
    Compare taped gradients of `fn` against central differences.

    Args:
        fn: Zero-argument function returning a scalar tensor
        tensors: Named tensors to check (must have requires_grad=True)
        epsilon: Finite-difference step
        max_entries: Check at most this many randomly chosen entries per tensor
        seed: Seed for choosing checked entries

    Returns:
        Mapping of tensor name to its relative error
    """
    with GradientTape() as tape:
        target = fn()
    names = list(tensors)
    analytic = tape.gradient(target, [tensors[name] for name in names])

    rng = np.random.default_rng(seed)
    errors = {}
    for name, grad in zip(names, analytic):
        tensor = tensors[name]
        indices = None
        if max_entries is not None and tensor.size > max_entries:
            indices = rng.choice(tensor.size, size=max_entries, replace=False)
        numeric = numerical_gradient(fn, tensor, epsilon=epsilon, indices=indices)
        errors[name] = relative_error(grad, numeric)
        logger.debug(f"gradcheck {name}: relative error {errors[name]:.3e}")
    return errors

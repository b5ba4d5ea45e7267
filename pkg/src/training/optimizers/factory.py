"""Factory for creating the configured optimizer."""

import logging

from .adam import Adam
from .base import Optimizer
from .sgd import SGDMomentum

logger = logging.getLogger(__name__)


def create_optimizer(optimizer_type: str = "adam", learning_rate: float = 1e-3) -> Optimizer:
    """
    Create an optimizer by name.

    Args:
        optimizer_type: 'adam' or 'sgd-momentum'
        learning_rate: Step size

    Returns:
        Optimizer with fresh state

    Raises:
        ValueError: If the optimizer type is not supported

    Examples:
        >>> optimizer = create_optimizer('adam', learning_rate=1e-3)
        >>> optimizer = create_optimizer('sgd-momentum', learning_rate=0.01)
    """
    optimizer_type = optimizer_type.lower()

    if optimizer_type == "adam":
        logger.debug(f"Creating Adam optimizer (lr={learning_rate})")
        return Adam(learning_rate)

    elif optimizer_type == "sgd-momentum":
        logger.debug(f"Creating SGD-momentum optimizer (lr={learning_rate})")
        return SGDMomentum(learning_rate)

    else:
        logger.error(f"Unsupported optimizer type: {optimizer_type}")
        raise ValueError(
            f"Unsupported optimizer type: {optimizer_type}. "
            f"Supported types: adam, sgd-momentum"
        )

from typing import Dict

import numpy as np

from .base import Optimizer


class SGDMomentum(Optimizer):
    """
    SGD with heavy-ball momentum: v <- mu * v + grad; theta <- theta - lr * v.

    With zero initial velocity the first step is plain SGD.
    """

    def __init__(self, learning_rate: float, momentum: float = 0.9):
        super().__init__(learning_rate)
        self.momentum = momentum
        self.velocity: Dict[str, np.ndarray] = {}

    def _update(self, name: str, value: np.ndarray, grad: np.ndarray) -> np.ndarray:
        velocity = self.velocity.get(name)
        velocity = grad.copy() if velocity is None else self.momentum * velocity + grad
        self.velocity[name] = velocity
        return value - self.learning_rate * velocity

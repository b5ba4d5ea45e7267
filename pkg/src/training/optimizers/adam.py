from typing import Dict

import numpy as np

from .base import Optimizer


class Adam(Optimizer):
    """Adam with bias-corrected first and second moment estimates."""

    def __init__(
        self,
        learning_rate: float,
        beta1: float = 0.9,
        beta2: float = 0.999,
        epsilon: float = 1e-8,
    ):
        super().__init__(learning_rate)
        self.beta1 = beta1
        self.beta2 = beta2
        self.epsilon = epsilon
        self.m: Dict[str, np.ndarray] = {}
        self.v: Dict[str, np.ndarray] = {}

    def _update(self, name: str, value: np.ndarray, grad: np.ndarray) -> np.ndarray:
        m = self.m.get(name, np.zeros_like(value))
        v = self.v.get(name, np.zeros_like(value))
        m = self.beta1 * m + (1.0 - self.beta1) * grad
        v = self.beta2 * v + (1.0 - self.beta2) * grad ** 2
        self.m[name] = m
        self.v[name] = v

        t = self.iterations
        m_hat = m / (1.0 - self.beta1 ** t)
        v_hat = v / (1.0 - self.beta2 ** t)
        return value - self.learning_rate * m_hat / (np.sqrt(v_hat) + self.epsilon)

"""Parameter update rules."""
from .adam import Adam
from .base import Optimizer
from .factory import create_optimizer
from .sgd import SGDMomentum

__all__ = ["Adam", "Optimizer", "SGDMomentum", "create_optimizer"]

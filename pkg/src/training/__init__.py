"""Optimization loop, optimizers and checkpoint persistence."""
from .checkpoint import (
    ModelCheckpoint,
    checkpoint_from_model,
    decode_checkpoint,
    encode_checkpoint,
    load_checkpoint,
    model_from_checkpoint,
    save_checkpoint,
)
from .optimizers import Adam, Optimizer, SGDMomentum, create_optimizer
from .trainer import TrainResult, sample_gradients, train, validate_training_set

__all__ = [
    "Adam",
    "ModelCheckpoint",
    "Optimizer",
    "SGDMomentum",
    "TrainResult",
    "checkpoint_from_model",
    "create_optimizer",
    "decode_checkpoint",
    "encode_checkpoint",
    "load_checkpoint",
    "model_from_checkpoint",
    "sample_gradients",
    "save_checkpoint",
    "train",
    "validate_training_set",
]

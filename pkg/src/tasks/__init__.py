"""Pipeline task implementations, one per CLI command."""
from .evaluate import evaluate_task
from .experiment import experiment_task
from .features import features_task
from .synth import synth_task
from .train import train_task
from .visualize import visualize_task

__all__ = [
    "evaluate_task",
    "experiment_task",
    "features_task",
    "synth_task",
    "train_task",
    "visualize_task",
]

"""Joint training of encoder, BaseMod and ProtoMod on seen classes."""
import logging
import math
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from src.attributes import ClassDictionary
from src.data import Sample
from src.errors import ContractError, NonFiniteError, TrainingDivergedError
from src.losses import total_loss
from src.models import TrainConfig
from src.network import SAVNet, init_params
from src.parallel import ordered_map
from src.tensor import GradientTape

from .checkpoint import ModelCheckpoint, checkpoint_from_model
from .optimizers import create_optimizer

logger = logging.getLogger(__name__)

# Second entry of the shuffling generator's seed sequence, keeping it
# independent of the parameter-initialization stream.
_SHUFFLE_STREAM = 1


@dataclass
class TrainResult:
    model: SAVNet
    checkpoint: ModelCheckpoint
    loss_trace: List[float] = field(default_factory=list)


def validate_training_set(dataset: Sequence[Sample], dictionary: ClassDictionary) -> None:
    """
    Enforce zero-shot discipline: every training label must be a seen class.

    Raises:
        ContractError: On an empty dataset, an unknown label or an unseen label
    """
    if not dataset:
        raise ContractError("Training dataset is empty")
    for index, sample in enumerate(dataset):
        if sample.label not in dictionary:
            raise ContractError(f"Training sample {index} has unknown label '{sample.label}'")
        if not dictionary.is_seen(sample.label):
            raise ContractError(
                f"Training sample {index} has unseen label '{sample.label}'; "
                "unseen classes must never be used for training"
            )


def _warn_shared_seen_savs(dictionary: ClassDictionary) -> None:
    groups = defaultdict(list)
    for label in dictionary.seen_labels:
        groups[dictionary.sav(label).bits].append(label)
    for labels in groups.values():
        if len(labels) > 1:
            logger.warning(
                f"Seen classes {', '.join(labels)} share a SAV; "
                "the softmax loss cannot separate them"
            )


def sample_gradients(
    model: SAVNet,
    sample: Sample,
    config: TrainConfig,
    dictionary: ClassDictionary,
) -> Tuple[float, Dict[str, np.ndarray]]:
    """Loss and parameter gradients for one sample, on a tape owned by the calling thread."""
    names, tensors = zip(*model.named_parameters())
    with GradientTape() as tape:
        out = model.forward_mel(sample.mel)
        loss = total_loss(config.loss, out.g, out.h, sample.label, dictionary)
    grads = tape.gradient(loss, list(tensors))
    return loss.item(), dict(zip(names, grads))


def train(
    dataset: Sequence[Sample],
    dictionary: ClassDictionary,
    config: TrainConfig,
    on_epoch: Optional[Callable[[int, float], None]] = None,
) -> TrainResult:
    """
    Minimize the configured objective over `dataset`.

    Shuffling, initialization and therefore the resulting checkpoint depend
    only on (dataset, config). Per-sample gradients may be computed on the
    SAVNET_THREADS pool; they are always reduced in batch order.

    Args:
        dataset: Training samples, all of seen classes
        dictionary: Class dictionary providing SAVs and the seen set
        config: Training configuration
        on_epoch: Optional callback receiving (epoch, mean loss)

    Returns:
        Trained model, its checkpoint and the per-epoch mean loss trace

    Raises:
        ContractError: If the dataset is empty or contains non-seen labels
        TrainingDivergedError: If a batch loss becomes non-finite
    """
    validate_training_set(dataset, dictionary)
    if config.loss.mode == "sm":
        _warn_shared_seen_savs(dictionary)

    logger.info("Starting training")
    logger.info(f"  Samples: {len(dataset)}")
    logger.info(f"  Seen classes: {len(dictionary.seen_labels)}")
    logger.info(f"  Loss: {config.loss.name} (lambda={config.loss.lambda_})")
    logger.info(f"  Optimizer: {config.optimizer} (lr={config.learning_rate})")
    logger.info(f"  Epochs: {config.epochs}, batch size: {config.batch_size}, seed: {config.seed}")

    model = init_params(config.encoder, config.basemod, config.seed)
    params = model.parameters()
    optimizer = create_optimizer(config.optimizer, config.learning_rate)
    rng = np.random.default_rng([config.seed, _SHUFFLE_STREAM])

    loss_trace: List[float] = []
    for epoch in range(1, config.epochs + 1):
        order = rng.permutation(len(dataset))
        epoch_total = 0.0
        for batch_index, start in enumerate(range(0, len(dataset), config.batch_size), start=1):
            batch = [dataset[i] for i in order[start:start + config.batch_size]]

            def _gradients(sample: Sample):
                try:
                    return sample_gradients(model, sample, config, dictionary)
                except NonFiniteError as e:
                    logger.error(f"Non-finite value in forward/backward pass: {e}")
                    return math.nan, None

            results = ordered_map(_gradients, batch)
            batch_loss = sum(loss for loss, _ in results) / len(batch)
            if not math.isfinite(batch_loss):
                raise TrainingDivergedError(epoch, batch_index, batch_loss)

            grads = {}
            for name in params:
                total = results[0][1][name]
                for _, sample_grads in results[1:]:
                    total = total + sample_grads[name]
                grads[name] = total / len(batch)
            optimizer.step(params, grads)
            epoch_total += batch_loss * len(batch)

        epoch_loss = epoch_total / len(dataset)
        loss_trace.append(epoch_loss)
        logger.info(f"Epoch {epoch}/{config.epochs}: loss {epoch_loss:.6f}")
        if on_epoch is not None:
            on_epoch(epoch, epoch_loss)

    logger.info("=" * 60)
    logger.info("Training complete!")
    logger.info(f"  Initial epoch loss: {loss_trace[0]:.6f}")
    logger.info(f"  Final epoch loss: {loss_trace[-1]:.6f}")
    logger.info("=" * 60)

    checkpoint = checkpoint_from_model(model, config)
    return TrainResult(model=model, checkpoint=checkpoint, loss_trace=loss_trace)

"""Task for training a model on the train split of a manifest."""
import logging
from typing import Callable, Optional

from src.attributes import load_dictionary
from src.config import load_train_config
from src.data import load_samples
from src.training import TrainResult, save_checkpoint, train

logger = logging.getLogger(__name__)


def train_task(
    config_path: str,
    manifest: str,
    dictionary_path: str,
    out: str,
    on_epoch: Optional[Callable[[int, float], None]] = None,
) -> TrainResult:
    """
    Train on every `train` row of the manifest and write the checkpoint.

    Args:
        config_path: key=value training configuration file
        manifest: Corpus manifest CSV
        dictionary_path: Class dictionary CSV
        out: Checkpoint destination
        on_epoch: Optional callback receiving (epoch, mean loss)

    Returns:
        Training result including the per-epoch loss trace
    """
    config = load_train_config(config_path)
    dictionary = load_dictionary(dictionary_path)
    samples = load_samples(manifest, split="train")

    logger.info("Starting training task")
    logger.info(f"  Config: {config_path}")
    logger.info(f"  Manifest: {manifest}")
    logger.info(f"  Dictionary: {dictionary_path} ({len(dictionary)} classes)")

    try:
        result = train(samples, dictionary, config, on_epoch=on_epoch)
    except Exception as e:
        logger.error(f"Training failed: {e}", exc_info=True)
        raise

    path = save_checkpoint(result.checkpoint, out)
    logger.info(f"Checkpoint: {path}")
    return result

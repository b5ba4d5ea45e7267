"""Task for the loss-configuration comparison grid over several seeds."""
import csv
import io
import logging
from pathlib import Path
from typing import Dict, List, Optional, Sequence

import numpy as np

from src.attributes import Task, load_dictionary
from src.config import load_train_config
from src.data import load_samples
from src.evaluation import evaluate
from src.models import LossConfig, TrainConfig
from src.training import model_from_checkpoint, train

logger = logging.getLogger(__name__)

LOSS_PRESETS = ("bce", "bce+local", "sm", "sm+local")

METRIC_COLUMNS = (
    "zs_accuracy",
    "gzs_accuracy",
    "seen_accuracy",
    "unseen_precision",
    "unseen_recall",
    "unseen_f1",
    "seen_precision",
    "seen_recall",
    "seen_f1",
)


def format_results(rows: List[Dict[str, object]]) -> str:
    """CSV with one row per (loss, seed) and one `mean` row per loss."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(("loss", "seed", *METRIC_COLUMNS))
    for row in rows:
        writer.writerow([row["loss"], row["seed"], *(f"{row[c]:.6f}" for c in METRIC_COLUMNS)])

    for loss in dict.fromkeys(row["loss"] for row in rows):
        group = [row for row in rows if row["loss"] == loss]
        means = [float(np.mean([row[c] for row in group])) for c in METRIC_COLUMNS]
        writer.writerow([loss, "mean", *(f"{m:.6f}" for m in means)])
    return buffer.getvalue()


def experiment_task(
    manifest: str,
    dictionary_path: str,
    out: str,
    seeds: Sequence[int] = (0, 1, 2),
    losses: Sequence[str] = LOSS_PRESETS,
    config_path: Optional[str] = None,
) -> List[Dict[str, object]]:
    """
    Train and evaluate every loss configuration for every seed.

    Each run trains on the manifest's train rows, reloads the model from its
    32-bit checkpoint and evaluates zs, gzs and seen on the test rows.

    Args:
        manifest: Corpus manifest CSV
        dictionary_path: Class dictionary CSV
        out: Results CSV destination
        seeds: Training seeds
        losses: Loss preset names
        config_path: Optional base training config; its loss and seed are overridden

    Returns:
        One metrics dict per (loss, seed)
    """
    base = load_train_config(config_path) if config_path else TrainConfig()
    dictionary = load_dictionary(dictionary_path)
    train_samples = load_samples(manifest, split="train")
    test_samples = load_samples(manifest, split="test")

    logger.info("Starting experiment task")
    logger.info(f"  Losses: {', '.join(losses)}")
    logger.info(f"  Seeds: {', '.join(str(s) for s in seeds)}")
    logger.info(f"  Epochs per run: {base.epochs}")

    rows: List[Dict[str, object]] = []
    for loss in losses:
        for seed in seeds:
            config = base.model_copy(update={"loss": LossConfig.preset(loss), "seed": seed})
            logger.info(f"Run: loss={loss} seed={seed}")
            try:
                result = train(train_samples, dictionary, config)
            except Exception as e:
                logger.error(f"Run loss={loss} seed={seed} failed: {e}", exc_info=True)
                raise
            model = model_from_checkpoint(result.checkpoint)

            zs = evaluate(test_samples, dictionary, model, Task.ZS)
            gzs = evaluate(test_samples, dictionary, model, Task.GZS)
            seen = evaluate(test_samples, dictionary, model, Task.SEEN)
            rows.append({
                "loss": loss,
                "seed": seed,
                "zs_accuracy": zs.accuracy,
                "gzs_accuracy": gzs.accuracy,
                "seen_accuracy": seen.accuracy,
                "unseen_precision": zs.attributes.precision,
                "unseen_recall": zs.attributes.recall,
                "unseen_f1": zs.attributes.f1,
                "seen_precision": seen.attributes.precision,
                "seen_recall": seen.attributes.recall,
                "seen_f1": seen.attributes.f1,
            })

    out_path = Path(out)
    out_path.parent.mkdir(parents=True, exist_ok=True)
    out_path.write_text(format_results(rows), encoding="utf-8")

    logger.info("=" * 60)
    logger.info("Experiment complete!")
    for loss in losses:
        zs_mean = np.mean([row["zs_accuracy"] for row in rows if row["loss"] == loss])
        logger.info(f"  {loss}: mean zs accuracy {zs_mean:.4f}")
    logger.info(f"  Results: {out_path}")
    logger.info("=" * 60)
    return rows

"""Task for evaluating a checkpoint on the test split."""
import logging
from pathlib import Path
from typing import Optional

from src.attributes import Task, load_dictionary
from src.data import load_samples
from src.evaluation import EvalReport, evaluate
from src.evaluation.inference import Branch
from src.training import load_checkpoint, model_from_checkpoint

logger = logging.getLogger(__name__)


def evaluate_task(
    checkpoint_path: str,
    manifest: str,
    dictionary_path: str,
    task: str = "zs",
    report: Optional[str] = None,
    branch: Branch = "global",
) -> EvalReport:
    """
    Evaluate a checkpoint on the manifest's `test` rows under one protocol.

    Args:
        checkpoint_path: Checkpoint written by the train task
        manifest: Corpus manifest CSV
        dictionary_path: Class dictionary CSV
        task: zs, gzs or seen
        report: Optional CSV destination for per-class and overall metrics
        branch: Attribute scores from the global (BaseMod) or local (ProtoMod) branch

    Returns:
        The evaluation report
    """
    task = Task(task)
    model = model_from_checkpoint(load_checkpoint(checkpoint_path))
    dictionary = load_dictionary(dictionary_path)
    samples = load_samples(manifest, split="test")

    logger.info("Starting evaluation task")
    logger.info(f"  Checkpoint: {checkpoint_path}")
    logger.info(f"  Task: {task.value}, branch: {branch}")

    result = evaluate(samples, dictionary, model, task, branch=branch)

    if report is not None:
        report_path = Path(report)
        report_path.parent.mkdir(parents=True, exist_ok=True)
        report_path.write_text(result.to_csv(), encoding="utf-8")
        logger.info(f"Report: {report_path}")

    logger.info("=" * 60)
    logger.info("Evaluation complete!")
    logger.info(f"  {task.value} accuracy: {result.accuracy:.4f} over {result.n_samples} samples")
    logger.info(f"  Attribute F1: {result.attributes.f1:.4f}")
    logger.info("=" * 60)
    return result

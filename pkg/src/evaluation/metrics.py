"""Classification accuracy and attribute detection metrics."""
import csv
import io
import logging
from typing import Dict, List, Sequence, Union

import numpy as np
from pydantic import BaseModel, ConfigDict

from src.attributes import ClassDictionary, Task
from src.data import Sample
from src.errors import ConfigurationError, ContractError
from src.network import SAVNet
from src.parallel import ordered_map

from .inference import Branch, attribute_scores, classify_scores

logger = logging.getLogger(__name__)

DETECTION_THRESHOLD = 0.5

REPORT_COLUMNS = ("scope", "label", "count", "correct", "accuracy", "precision", "recall", "f1")


class AttributeMetrics(BaseModel):
    """Micro-averaged detection metrics over (sample, attribute) pairs."""

    model_config = ConfigDict(frozen=True)

    true_positives: int
    false_positives: int
    false_negatives: int
    true_negatives: int

    @property
    def precision(self) -> float:
        detected = self.true_positives + self.false_positives
        return self.true_positives / detected if detected else 0.0

    @property
    def recall(self) -> float:
        relevant = self.true_positives + self.false_negatives
        return self.true_positives / relevant if relevant else 0.0

    @property
    def f1(self) -> float:
        p, r = self.precision, self.recall
        return 2.0 * p * r / (p + r) if p + r > 0 else 0.0


class ClassResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    count: int
    correct: int
    attributes: AttributeMetrics

    @property
    def accuracy(self) -> float:
        return self.correct / self.count if self.count else 0.0


class EvalReport(BaseModel):
    """Result of one evaluation protocol run."""

    task: Task
    n_samples: int
    correct: int
    per_class: Dict[str, ClassResult]
    confusion: Dict[str, Dict[str, int]]
    attributes: AttributeMetrics

    @property
    def accuracy(self) -> float:
        return self.correct / self.n_samples if self.n_samples else 0.0

    def to_text(self) -> str:
        lines = [
            f"task: {self.task.value}",
            f"samples: {self.n_samples}",
            f"{self.task.value}_accuracy={self.accuracy:.6f}",
            f"attribute_precision={self.attributes.precision:.6f}",
            f"attribute_recall={self.attributes.recall:.6f}",
            f"attribute_f1={self.attributes.f1:.6f}",
            "per-class accuracy:",
        ]
        for label, result in sorted(self.per_class.items()):
            lines.append(f"  {label}: {result.correct}/{result.count} = {result.accuracy:.6f}")
        predicted = sorted({p for row in self.confusion.values() for p in row})
        lines.append("confusion (rows: true, columns: predicted):")
        lines.append("  " + ",".join(["true\\pred", *predicted]))
        for label in sorted(self.confusion):
            counts = [str(self.confusion[label].get(p, 0)) for p in predicted]
            lines.append("  " + ",".join([label, *counts]))
        return "\n".join(lines) + "\n"

    def to_csv(self) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(REPORT_COLUMNS)
        for label, result in sorted(self.per_class.items()):
            writer.writerow(_metrics_row("class", label, result))
        overall = ClassResult(
            count=self.n_samples, correct=self.correct, attributes=self.attributes
        )
        writer.writerow(_metrics_row("overall", "*", overall))
        return buffer.getvalue()


def _metrics_row(scope: str, label: str, result: ClassResult) -> List[str]:
    attrs = result.attributes
    return [
        scope,
        label,
        str(result.count),
        str(result.correct),
        f"{result.accuracy:.6f}",
        f"{attrs.precision:.6f}",
        f"{attrs.recall:.6f}",
        f"{attrs.f1:.6f}",
    ]


def attribute_metrics_from_scores(scores: np.ndarray, truths: np.ndarray) -> AttributeMetrics:
    """
    Count detections `scores >= 0.5` against binary ground truth.

    Args:
        scores: Attribute scores in [0, 1], shape [N, K]
        truths: Binary SAVs, shape [N, K]
    """
    scores = np.atleast_2d(scores)
    truths = np.atleast_2d(truths).astype(bool)
    detected = scores >= DETECTION_THRESHOLD
    return AttributeMetrics(
        true_positives=int(np.sum(detected & truths)),
        false_positives=int(np.sum(detected & ~truths)),
        false_negatives=int(np.sum(~detected & truths)),
        true_negatives=int(np.sum(~detected & ~truths)),
    )


def _check_labels(dataset: Sequence[Sample], dictionary: ClassDictionary) -> None:
    for index, sample in enumerate(dataset):
        if sample.label not in dictionary:
            raise ContractError(
                f"Sample {index} has label '{sample.label}' missing from the dictionary"
            )


def _score_all(dataset: Sequence[Sample], model: SAVNet, branch: Branch) -> np.ndarray:
    return np.stack(ordered_map(lambda s: attribute_scores(model, s.mel, branch), dataset))


def select_samples(
    dataset: Sequence[Sample], dictionary: ClassDictionary, task: Union[Task, str]
) -> List[Sample]:
    """zs and gzs evaluate unseen-class samples; seen evaluates seen-class samples."""
    task = Task(task)
    want_seen = task is Task.SEEN
    return [s for s in dataset if dictionary.is_seen(s.label) == want_seen]


def evaluate(
    dataset: Sequence[Sample],
    dictionary: ClassDictionary,
    model: SAVNet,
    task: Union[Task, str],
    branch: Branch = "global",
) -> EvalReport:
    """
    Run one evaluation protocol.

    zs: unseen samples against unseen candidates. gzs: unseen samples against
    all classes. seen: seen test samples against all classes.

    Raises:
        ContractError: If a sample label is missing from the dictionary
        ConfigurationError: If the task selects no samples or no candidates
    """
    task = Task(task)
    _check_labels(dataset, dictionary)
    candidates = dictionary.candidate_matrix(task)
    samples = select_samples(dataset, dictionary, task)
    if not samples:
        raise ConfigurationError(f"No test samples for task '{task.value}'")

    scores = _score_all(samples, model, branch)
    truths = np.stack([dictionary.sav(s.label).as_array() for s in samples])
    predictions = [classify_scores(row, candidates) for row in scores]

    confusion: Dict[str, Dict[str, int]] = {}
    for sample, predicted in zip(samples, predictions):
        row = confusion.setdefault(sample.label, {})
        row[predicted] = row.get(predicted, 0) + 1

    per_class = {}
    for label in sorted(confusion):
        mask = np.array([s.label == label for s in samples])
        per_class[label] = ClassResult(
            count=int(mask.sum()),
            correct=confusion[label].get(label, 0),
            attributes=attribute_metrics_from_scores(scores[mask], truths[mask]),
        )

    correct = sum(result.correct for result in per_class.values())
    report = EvalReport(
        task=task,
        n_samples=len(samples),
        correct=correct,
        per_class=per_class,
        confusion=confusion,
        attributes=attribute_metrics_from_scores(scores, truths),
    )
    logger.info(
        f"Evaluated {task.value}: {correct}/{len(samples)} correct "
        f"(accuracy {report.accuracy:.4f}, {len(candidates)} candidates)"
    )
    return report


def attribute_metrics(
    dataset: Sequence[Sample],
    dictionary: ClassDictionary,
    model: SAVNet,
    branch: Branch = "global",
) -> AttributeMetrics:
    """Micro-averaged attribute detection over every sample of `dataset`."""
    _check_labels(dataset, dictionary)
    if not dataset:
        raise ConfigurationError("attribute_metrics needs at least one sample")
    scores = _score_all(dataset, model, branch)
    truths = np.stack([dictionary.sav(s.label).as_array() for s in dataset])
    return attribute_metrics_from_scores(scores, truths)

"""
Class dictionary: event label -> SAV, each label tagged seen or unseen.

CSV format (UTF-8, `#` lines ignored):

    label,split,high-pitched,middle-pitched,...,many
    bowl,unseen,1,0,0,...
"""
import csv
import io
import logging
from collections import defaultdict
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from pathlib import Path
from typing import Dict, List, Literal, Sequence, Tuple, Union

import numpy as np
from pydantic import ValidationError

from src.errors import ConfigurationError, DictionaryParseError

from .schema import ATTRIBUTES, SAV, scale_sav

logger = logging.getLogger(__name__)

Split = Literal["seen", "unseen"]
HEADER = ("label", "split", *ATTRIBUTES)


class Task(str, Enum):
    """Evaluation protocol."""

    ZS = "zs"
    GZS = "gzs"
    SEEN = "seen"


@dataclass(frozen=True)
class ClassEntry:
    label: str
    split: Split
    sav: SAV


class ClassDictionary:
    """Immutable mapping of event classes to SAVs with a seen/unseen partition."""

    def __init__(self, entries: Sequence[ClassEntry]):
        by_label: Dict[str, ClassEntry] = {}
        for entry in entries:
            if entry.label in by_label:
                raise ValueError(f"Duplicate label: {entry.label}")
            if entry.split not in ("seen", "unseen"):
                raise ValueError(f"Unknown split '{entry.split}' for {entry.label}")
            by_label[entry.label] = entry
        self._entries: Tuple[ClassEntry, ...] = tuple(entries)
        self._by_label = by_label
        self._warn_shared_savs()

    def _warn_shared_savs(self) -> None:
        groups = defaultdict(list)
        for entry in self._entries:
            groups[entry.sav.bits].append(entry.label)
        for labels in groups.values():
            if len(labels) > 1:
                logger.warning(f"Classes share an identical SAV: {', '.join(sorted(labels))}")

    def __len__(self) -> int:
        return len(self._entries)

    def __contains__(self, label: str) -> bool:
        return label in self._by_label

    def __iter__(self):
        return iter(self._entries)

    @property
    def entries(self) -> Tuple[ClassEntry, ...]:
        return self._entries

    def entry(self, label: str) -> ClassEntry:
        try:
            return self._by_label[label]
        except KeyError:
            raise KeyError(f"Label not in dictionary: {label}") from None

    def sav(self, label: str) -> SAV:
        return self.entry(label).sav

    def is_seen(self, label: str) -> bool:
        return self.entry(label).split == "seen"

    def labels(self, split: Union[Split, None] = None) -> List[str]:
        """Labels in lexicographic order, optionally restricted to one split."""
        return sorted(e.label for e in self._entries if split is None or e.split == split)

    @property
    def seen_labels(self) -> List[str]:
        return self.labels("seen")

    @property
    def unseen_labels(self) -> List[str]:
        return self.labels("unseen")

    @cached_property
    def seen_scaled_matrix(self) -> Tuple[List[str], np.ndarray]:
        """Seen labels and their stacked phi' vectors, shape [|seen|, K]."""
        labels = self.seen_labels
        if labels:
            matrix = np.stack([scale_sav(self.sav(label)) for label in labels])
        else:
            matrix = np.zeros((0, len(ATTRIBUTES)))
        matrix.flags.writeable = False
        return labels, matrix

    def candidate_matrix(self, task: Union[Task, str]) -> List[Tuple[str, SAV]]:
        """
        Candidate classes for an evaluation task, in label-lexicographic order.

        zs selects the unseen classes; gzs and seen select unseen and seen together.

        Raises:
            ConfigurationError: If the candidate set is empty
        """
        task = Task(task)
        labels = self.unseen_labels if task is Task.ZS else self.labels()
        if not labels:
            raise ConfigurationError(f"No candidate classes for task '{task.value}'")
        return [(label, self.sav(label)) for label in labels]


def parse_dictionary(text: str) -> ClassDictionary:
    """Parse dictionary CSV text; row numbers in errors count physical lines from 1."""
    entries: List[ClassEntry] = []
    seen_labels: Dict[str, int] = {}
    header_checked = False

    for row_number, row in enumerate(csv.reader(io.StringIO(text)), start=1):
        if not row or not "".join(row).strip() or row[0].lstrip().startswith("#"):
            continue
        row = [cell.strip() for cell in row]
        if len(row) != len(HEADER):
            raise DictionaryParseError(
                row_number,
                f"expected {len(HEADER)} columns (label, split, {len(ATTRIBUTES)} attributes), "
                f"got {len(row)}",
            )
        if not header_checked:
            if tuple(row) != HEADER:
                raise DictionaryParseError(row_number, f"header must be: {','.join(HEADER)}")
            header_checked = True
            continue

        label, split, *cells = row
        if not label:
            raise DictionaryParseError(row_number, "empty label")
        if label in seen_labels:
            raise DictionaryParseError(
                row_number, f"duplicate label '{label}' (first defined at row {seen_labels[label]})"
            )
        if split not in ("seen", "unseen"):
            raise DictionaryParseError(
                row_number, f"unknown split tag '{split}', expected seen or unseen"
            )
        for name, cell in zip(ATTRIBUTES, cells):
            if cell not in ("0", "1"):
                raise DictionaryParseError(
                    row_number, f"attribute '{name}' must be 0 or 1, got '{cell}'"
                )
        try:
            sav = SAV(bits=[int(c) for c in cells])
        except ValidationError as e:
            raise DictionaryParseError(row_number, str(e)) from e

        seen_labels[label] = row_number
        entries.append(ClassEntry(label=label, split=split, sav=sav))

    if not header_checked:
        raise DictionaryParseError(1, "missing header row")
    return ClassDictionary(entries)


def load_dictionary(path: Union[str, Path]) -> ClassDictionary:
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"Dictionary file not found: {path}")
    dictionary = parse_dictionary(path.read_text(encoding="utf-8"))
    logger.info(
        f"Loaded dictionary {path}: {len(dictionary.seen_labels)} seen, "
        f"{len(dictionary.unseen_labels)} unseen classes"
    )
    return dictionary


def dump_dictionary(dictionary: ClassDictionary) -> str:
    """Serialize to CSV text in entry order; `parse_dictionary` inverts it."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(HEADER)
    for entry in dictionary.entries:
        writer.writerow([entry.label, entry.split, *entry.sav.bits])
    return buffer.getvalue()

"""Corpus manifests (`path,label,split`) and feature loading."""
import csv
import io
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, List, Optional, Union

from pydantic import ValidationError

from src.audio import MelSpectrogram, features_from_wav
from src.errors import ConfigurationError
from src.models import ManifestRow
from src.parallel import ordered_map

logger = logging.getLogger(__name__)

MANIFEST_HEADER = ("path", "label", "split")


@dataclass(frozen=True)
class Sample:
    mel: MelSpectrogram
    label: str


def parse_manifest(text: str) -> List[ManifestRow]:
    rows = []
    reader = csv.DictReader(io.StringIO(text))
    if tuple(reader.fieldnames or ()) != MANIFEST_HEADER:
        raise ConfigurationError(
            f"Manifest header must be {','.join(MANIFEST_HEADER)}, got {reader.fieldnames}"
        )
    for line_number, record in enumerate(reader, start=2):
        try:
            rows.append(ManifestRow.model_validate(record))
        except ValidationError as e:
            raise ConfigurationError(f"Manifest line {line_number}: {e}") from e
    return rows


def read_manifest(path: Union[str, Path]) -> List[ManifestRow]:
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"Manifest not found: {path}")
    return parse_manifest(path.read_text(encoding="utf-8"))


def format_manifest(rows: Iterable[ManifestRow]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(MANIFEST_HEADER)
    for row in rows:
        writer.writerow([row.path, row.label, row.split])
    return buffer.getvalue()


def load_samples(manifest_path: Union[str, Path], split: Optional[str] = None) -> List[Sample]:
    """
    Extract features for every manifest row (optionally one split), in manifest order.

    Feature extraction runs on the SAVNET_THREADS pool.
    """
    manifest_path = Path(manifest_path)
    rows = [r for r in read_manifest(manifest_path) if split is None or r.split == split]

    def _load(row: ManifestRow) -> Sample:
        return Sample(mel=features_from_wav(manifest_path.parent / row.path), label=row.label)

    samples = ordered_map(_load, rows)
    logger.info(f"Loaded {len(samples)} {split or 'all'} samples from {manifest_path}")
    return samples

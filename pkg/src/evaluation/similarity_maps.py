"""Export of ProtoMod similarity maps as PGM heatmaps, raw CSV and an index."""
import csv
import io
import logging
from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np

from src.attributes import ATTRIBUTES
from src.audio import N_FRAMES, N_MELS, MelSpectrogram
from src.network import SAVNet
from src.parallel import ordered_map
from src.storage import ArtifactStore

logger = logging.getLogger(__name__)

INDEX_FILE = "index.csv"


@dataclass(frozen=True)
class MapIndexEntry:
    attribute: str
    score: float
    row: int
    col: int


def normalize_map(values: np.ndarray) -> np.ndarray:
    """Min-max scale to 0..255 (uint8); a map with zero range becomes all zeros."""
    low, high = values.min(), values.max()
    if high == low:
        return np.zeros(values.shape, dtype=np.uint8)
    return np.round((values - low) / (high - low) * 255.0).astype(np.uint8)


def upsample_nearest(image: np.ndarray, height: int = N_MELS, width: int = N_FRAMES) -> np.ndarray:
    rows = (np.arange(height) * image.shape[0]) // height
    cols = (np.arange(width) * image.shape[1]) // width
    return image[rows][:, cols]


def encode_pgm(image: np.ndarray) -> bytes:
    """Binary greyscale PGM (P5); row 0 is mel bin 0 (lowest frequency)."""
    height, width = image.shape
    return f"P5\n{width} {height}\n255\n".encode("ascii") + image.astype(np.uint8).tobytes()


def _map_csv(values: np.ndarray) -> str:
    return "\n".join(",".join(repr(float(v)) for v in row) for row in values) + "\n"


def export_similarity_maps(
    mel: MelSpectrogram, model: SAVNet, store: ArtifactStore
) -> List[MapIndexEntry]:
    """
    Write one heatmap per attribute plus raw values and an index.

    For each attribute k: `<attr>.pgm` (normalized, upsampled to 80x100),
    `<attr>.csv` (raw H x W map). `index.csv` lists the attribute, its score
    h_k and the argmax cell (row, col) of the raw map.
    """
    out = model.forward_mel(mel)
    maps = out.maps.data
    entries = []
    for k, attribute in enumerate(ATTRIBUTES):
        values = maps[k]
        if values.max() == values.min():
            logger.warning(
                f"Similarity map for {attribute} has zero range; writing an all-zero image"
            )
        store.write_bytes(encode_pgm(upsample_nearest(normalize_map(values))), f"{attribute}.pgm")
        store.write_text(_map_csv(values), f"{attribute}.csv")
        row, col = out.argmax[k]
        score = float(out.h.data[k])
        entries.append(MapIndexEntry(attribute=attribute, score=score, row=int(row), col=int(col)))

    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["attribute", "score", "row", "col"])
    for entry in entries:
        writer.writerow([entry.attribute, repr(entry.score), entry.row, entry.col])
    store.write_text(buffer.getvalue(), INDEX_FILE)
    logger.info(f"Exported {len(entries)} similarity maps for {mel.source_id or 'input'}")
    return entries


def argmax_rows(
    mels: Sequence[MelSpectrogram], model: SAVNet, attribute: str
) -> List[Tuple[int, int]]:
    """(argmax row, map height) of one attribute's similarity map for each input."""
    k = ATTRIBUTES.index(attribute)

    def _row(mel: MelSpectrogram) -> Tuple[int, int]:
        out = model.forward_mel(mel)
        return int(out.argmax[k][0]), out.maps.dims[1]

    return ordered_map(_row, mels)


def high_band_hit_rate(
    mels: Sequence[MelSpectrogram], model: SAVNet, attribute: str = "high-pitched"
) -> float:
    """Fraction of inputs whose `attribute` map peaks in the upper half of mel rows."""
    if not mels:
        return 0.0
    rows = argmax_rows(mels, model, attribute)
    hits = sum(1 for row, height in rows if row >= height / 2)
    return hits / len(rows)

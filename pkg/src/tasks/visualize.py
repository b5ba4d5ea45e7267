"""Task for exporting similarity maps of one clip."""
import logging
from typing import List

from src.audio import features_from_wav
from src.evaluation import MapIndexEntry, export_similarity_maps
from src.storage import create_storage
from src.training import load_checkpoint, model_from_checkpoint

logger = logging.getLogger(__name__)


def visualize_task(
    checkpoint_path: str,
    wav: str,
    out_dir: str,
    storage_type: str = "local",
) -> List[MapIndexEntry]:
    model = model_from_checkpoint(load_checkpoint(checkpoint_path))
    store = create_storage(storage_type=storage_type, base_path=out_dir)
    entries = export_similarity_maps(features_from_wav(wav), model, store)

    strongest = max(entries, key=lambda e: e.score)
    logger.info(f"Strongest attribute for {wav}: {strongest.attribute} ({strongest.score:.4f})")
    return entries

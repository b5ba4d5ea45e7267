"""Task for dumping the log-mel features of one WAV file."""
import logging
from pathlib import Path

from src.audio import MelSpectrogram, features_from_wav

logger = logging.getLogger(__name__)


def features_task(wav: str, out: str) -> MelSpectrogram:
    """Write the 80 x 100 log-mel spectrogram of `wav` as CSV to `out`."""
    mel = features_from_wav(wav)
    out_path = Path(out)
    out_path.parent.mkdir(parents=True, exist_ok=True)
    out_path.write_text(mel.to_csv(), encoding="utf-8")
    logger.info(f"Wrote features of {wav} to {out_path}")
    return mel

"""PCM-16 mono WAV reading and writing."""
import logging
import struct
from dataclasses import dataclass
from pathlib import Path
from typing import BinaryIO, Union

import numpy as np
import soundfile as sf

from src.errors import AudioFormatError

logger = logging.getLogger(__name__)

SAMPLE_RATE = 16000
PCM16_SCALE = 32768.0


@dataclass(frozen=True)
class AudioClip:
    """Mono samples in [-1, 1] at `sample_rate` Hz."""

    samples: np.ndarray
    sample_rate: int = SAMPLE_RATE

    def __post_init__(self):
        if self.samples.ndim != 1 or self.samples.size == 0:
            raise ValueError(
                f"AudioClip needs a non-empty 1-D sample array, got {self.samples.shape}"
            )

    @property
    def duration(self) -> float:
        return self.samples.size / self.sample_rate


def _check_riff_chunks(path: Path) -> None:
    """Verify the RIFF/WAVE container and that the data chunk is fully present."""
    raw = path.read_bytes()
    if len(raw) < 12 or raw[:4] != b"RIFF" or raw[8:12] != b"WAVE":
        raise AudioFormatError("container", f"{path} is not a RIFF/WAVE file")

    offset = 12
    while offset + 8 <= len(raw):
        chunk_id, size = struct.unpack_from("<4sI", raw, offset)
        body = offset + 8
        if chunk_id == b"data":
            available = len(raw) - body
            if size > available:
                raise AudioFormatError(
                    "data", f"{path} declares {size} data bytes but only {available} are present"
                )
            return
        offset = body + size + (size & 1)
    raise AudioFormatError("data", f"{path} has no data chunk")


def resample_linear(samples: np.ndarray, source_rate: int, target_rate: int) -> np.ndarray:
    """
    Resample by linear interpolation; first and last samples are preserved.

    N input samples become floor((N - 1) * target / source) + 1 output samples,
    e.g. 8 kHz -> 16 kHz maps N samples to 2N - 1.
    """
    if source_rate == target_rate:
        return samples
    n_out = (samples.size - 1) * target_rate // source_rate + 1
    positions = np.arange(n_out) * (source_rate / target_rate)
    return np.interp(positions, np.arange(samples.size), samples)


def load_wav(path: Union[str, Path], target_rate: int = SAMPLE_RATE) -> AudioClip:
    """
    Read a PCM-16 mono RIFF/WAVE file.

    Args:
        path: WAV file path
        target_rate: Output sample rate; other rates are linearly resampled

    Returns:
        AudioClip with samples scaled by 1/32768

    Raises:
        FileNotFoundError: If the file does not exist
        AudioFormatError: If the container, subtype, channel count or data chunk is invalid
    """
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"WAV file not found: {path}")

    _check_riff_chunks(path)
    try:
        info = sf.info(str(path))
    except RuntimeError as e:
        raise AudioFormatError("container", f"{path}: {e}") from e

    if info.format != "WAV":
        raise AudioFormatError("container", f"{path} has format {info.format}, expected WAV")
    if info.subtype != "PCM_16":
        raise AudioFormatError("subtype", f"{path} has subtype {info.subtype}, expected PCM_16")
    if info.channels != 1:
        raise AudioFormatError("channels", f"{path} has {info.channels} channels, expected 1")

    data, rate = sf.read(str(path), dtype="int16", always_2d=False)
    if data.size == 0:
        raise AudioFormatError("data", f"{path} holds no samples")

    samples = data.astype(np.float64) / PCM16_SCALE
    if rate != target_rate:
        logger.warning(f"Resampling {path} from {rate} Hz to {target_rate} Hz")
        samples = resample_linear(samples, rate, target_rate)
    return AudioClip(samples=samples, sample_rate=target_rate)


def quantize_pcm16(samples: np.ndarray) -> np.ndarray:
    return np.clip(np.round(samples * PCM16_SCALE), -32768, 32767).astype(np.int16)


def write_wav(destination: Union[str, Path, BinaryIO], clip: AudioClip) -> None:
    """Write a clip as PCM-16 mono WAV to a path or an open binary handle."""
    target = str(destination) if isinstance(destination, (str, Path)) else destination
    sf.write(target, quantize_pcm16(clip.samples), clip.sample_rate, format="WAV", subtype="PCM_16")

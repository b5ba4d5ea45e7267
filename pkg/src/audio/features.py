"""
Log-mel frontend: 16 kHz audio -> 80 mel bins x 100 frames.

STFT uses a 400-sample (25 ms) periodic Hann window, a 160-sample (10 ms) hop
and a 512-point FFT without centering, so 100 frames span about one second.
Mel filters are HTK-scale triangles over 0-8000 Hz with unit peak weight.
"""
import functools
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Union

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view
from scipy.signal import get_window

from src.errors import ConfigurationError

from .wav import SAMPLE_RATE, AudioClip, load_wav

logger = logging.getLogger(__name__)

WINDOW_LENGTH = 400
HOP_LENGTH = 160
N_FFT = 512
N_MELS = 80
N_FRAMES = 100
LOG_FLOOR = 1e-10
STD_FLOOR = 1e-6


@dataclass(frozen=True)
class MelSpectrogram:
    """Log-mel energies of shape [1, 80, 100]."""

    values: np.ndarray
    source_id: str = ""

    def __post_init__(self):
        if self.values.shape != (1, N_MELS, N_FRAMES):
            raise ValueError(
                f"MelSpectrogram must be (1, {N_MELS}, {N_FRAMES}), got {self.values.shape}"
            )

    def standardized(self) -> np.ndarray:
        """
        Zero-mean, unit-variance copy of the clip, the network input.

        A constant spectrogram (std below 1e-6) maps to all zeros.
        """
        std = float(self.values.std())
        if std < STD_FLOOR:
            return np.zeros_like(self.values)
        return (self.values - self.values.mean()) / std

    def to_csv(self) -> str:
        """80 rows (mel bins) of 100 comma-separated frame values."""
        rows = (",".join(repr(float(v)) for v in row) for row in self.values[0])
        return "\n".join(rows) + "\n"


def hz_to_mel(hz):
    return 2595.0 * np.log10(1.0 + np.asarray(hz, dtype=np.float64) / 700.0)


def mel_to_hz(mel):
    return 700.0 * (10.0 ** (np.asarray(mel, dtype=np.float64) / 2595.0) - 1.0)


@functools.lru_cache(maxsize=8)
def mel_filterbank(
    n_mels: int = N_MELS,
    n_fft: int = N_FFT,
    sample_rate: int = SAMPLE_RATE,
    fmin: float = 0.0,
    fmax: float = 8000.0,
) -> np.ndarray:
    """
    Triangular HTK mel filters, shape [n_mels, n_fft // 2 + 1].

    Each triangle is sampled at the FFT bin frequencies and rescaled so its
    largest weight is exactly 1. The returned array is read-only.

    Raises:
        ConfigurationError: If any filter covers no FFT bin
    """
    fft_freqs = np.linspace(0.0, sample_rate / 2.0, n_fft // 2 + 1)
    edges = mel_to_hz(np.linspace(hz_to_mel(fmin), hz_to_mel(fmax), n_mels + 2))

    weights = np.zeros((n_mels, fft_freqs.size))
    for m in range(n_mels):
        left, center, right = edges[m], edges[m + 1], edges[m + 2]
        rising = (fft_freqs - left) / (center - left)
        falling = (right - fft_freqs) / (right - center)
        weights[m] = np.maximum(0.0, np.minimum(rising, falling))

    peaks = weights.max(axis=1)
    empty = np.flatnonzero(peaks <= 0.0)
    if empty.size:
        raise ConfigurationError(
            f"Mel filters {empty.tolist()} cover no FFT bin "
            f"(n_mels={n_mels}, n_fft={n_fft}, band {fmin}-{fmax} Hz)"
        )
    weights /= peaks[:, None]
    weights.flags.writeable = False
    return weights


def stft(
    clip: AudioClip,
    window_length: int = WINDOW_LENGTH,
    hop_length: int = HOP_LENGTH,
    n_fft: int = N_FFT,
) -> np.ndarray:
    """
    Power spectrogram, shape [n_fft // 2 + 1, T] with T = 1 + (len - window) // hop.

    Clips shorter than one window are zero-padded to one full window.
    """
    samples = clip.samples
    if samples.size < window_length:
        samples = np.pad(samples, (0, window_length - samples.size))
    frames = sliding_window_view(samples, window_length)[::hop_length]
    window = get_window("hann", window_length, fftbins=True)
    spectrum = np.fft.rfft(frames * window, n=n_fft, axis=1)
    return (np.abs(spectrum) ** 2).T


def mel_project(power: np.ndarray, filterbank: Union[np.ndarray, None] = None) -> np.ndarray:
    """Apply the filterbank to a power spectrogram: [257, T] -> [80, T]."""
    filterbank = mel_filterbank() if filterbank is None else filterbank
    if power.shape[0] != filterbank.shape[1]:
        raise ValueError(
            f"Power spectrogram has {power.shape[0]} bins, filterbank expects {filterbank.shape[1]}"
        )
    return filterbank @ power


def finalize(mel: np.ndarray, source_id: str = "") -> MelSpectrogram:
    """
    Log-compress and fix the frame count to 100.

    Longer inputs keep their first 100 frames; shorter ones are right-padded
    with log(1e-10).
    """
    log_mel = np.log(np.maximum(mel, LOG_FLOOR))
    frames = log_mel.shape[1]
    if frames > N_FRAMES:
        log_mel = log_mel[:, :N_FRAMES]
    elif frames < N_FRAMES:
        pad = np.full((log_mel.shape[0], N_FRAMES - frames), np.log(LOG_FLOOR))
        log_mel = np.concatenate([log_mel, pad], axis=1)
    return MelSpectrogram(values=log_mel[None, :, :], source_id=source_id)


def extract_features(clip: AudioClip, source_id: str = "") -> MelSpectrogram:
    """Full frontend for one clip."""
    return finalize(mel_project(stft(clip)), source_id=source_id)


def features_from_wav(path: Union[str, Path]) -> MelSpectrogram:
    return extract_features(load_wav(path), source_id=str(path))

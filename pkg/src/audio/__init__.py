"""Audio I/O and the log-mel frontend."""
from .features import (
    N_FRAMES,
    N_MELS,
    MelSpectrogram,
    extract_features,
    features_from_wav,
    finalize,
    mel_filterbank,
    mel_project,
    stft,
)
from .wav import SAMPLE_RATE, AudioClip, load_wav, resample_linear, write_wav

__all__ = [
    "AudioClip",
    "MelSpectrogram",
    "N_FRAMES",
    "N_MELS",
    "SAMPLE_RATE",
    "extract_features",
    "features_from_wav",
    "finalize",
    "load_wav",
    "mel_filterbank",
    "mel_project",
    "resample_linear",
    "stft",
    "write_wav",
]

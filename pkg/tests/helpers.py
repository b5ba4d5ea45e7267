"""Builders shared by unit and integration tests."""
import numpy as np

from src.attributes import SAV
from src.audio import N_FRAMES, N_MELS, AudioClip, MelSpectrogram
from src.tensor import Tensor, matmul, reshape

TINY_BLOCKS = [(4, 1), (4, 1), (4, 1)]


def make_sav(*names: str) -> SAV:
    return SAV.from_attributes(names)


def random_mel(seed: int, label: str = "") -> MelSpectrogram:
    rng = np.random.default_rng(seed)
    return MelSpectrogram(values=rng.normal(-5.0, 2.0, size=(1, N_MELS, N_FRAMES)), source_id=label)


def tone(freq: float, seconds: float = 1.0, amplitude: float = 0.5, rate: int = 16000) -> AudioClip:
    t = np.arange(int(seconds * rate)) / rate
    return AudioClip(samples=amplitude * np.sin(2.0 * np.pi * freq * t), sample_rate=rate)


def project(t: Tensor, seed: int = 0) -> Tensor:
    """Scalar <t, v> for a fixed random v, so every entry of t reaches the target."""
    v = Tensor(np.random.default_rng(seed).normal(size=t.size))
    return reshape(matmul(reshape(t, (1, t.size)), v), ())

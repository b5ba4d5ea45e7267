"""Shared fixtures: tiny dictionaries, tiny networks and random mel inputs."""
import pytest

from src.attributes import ClassDictionary, ClassEntry
from src.data import Sample
from src.models import BaseModConfig, EncoderConfig, TrainConfig

from tests.helpers import TINY_BLOCKS, make_sav, random_mel


@pytest.fixture
def tiny_dictionary() -> ClassDictionary:
    """Three seen and two unseen classes with distinct SAVs."""
    return ClassDictionary([
        ClassEntry("bell", "seen", make_sav("high-pitched", "long", "metal")),
        ClassEntry("drum", "seen", make_sav("low-pitched", "middle", "collision")),
        ClassEntry("shaker", "seen", make_sav("middle-pitched", "short", "noise-like", "repeating")),
        ClassEntry("gong", "unseen", make_sav("low-pitched", "long", "metal")),
        ClassEntry("rattle", "unseen", make_sav("high-pitched", "short", "noise-like")),
    ])


@pytest.fixture
def tiny_encoder() -> EncoderConfig:
    return EncoderConfig(blocks=TINY_BLOCKS)


@pytest.fixture
def tiny_train_config(tiny_encoder) -> TrainConfig:
    return TrainConfig(
        epochs=2,
        batch_size=4,
        learning_rate=1e-3,
        encoder=tiny_encoder,
        basemod=BaseModConfig(hidden=8),
    )


@pytest.fixture
def tiny_dataset(tiny_dictionary):
    """Two random mels per seen class."""
    labels = [label for label in tiny_dictionary.seen_labels for _ in range(2)]
    return [Sample(mel=random_mel(seed, label), label=label) for seed, label in enumerate(labels)]

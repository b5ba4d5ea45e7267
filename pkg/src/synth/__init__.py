"""Attribute-controlled synthetic sound event corpus."""
from .corpus import (
    DICTIONARY_FILE,
    MANIFEST_FILE,
    RECIPES_FILE,
    Corpus,
    generate_corpus,
    sample_classes,
    supported_attributes,
)
from .recipes import EventRecipe, derive_sav, random_recipe
from .render import CLIP_SAMPLES, LENGTH_BANDS, PITCH_BANDS, class_timbre, render

__all__ = [
    "CLIP_SAMPLES",
    "DICTIONARY_FILE",
    "LENGTH_BANDS",
    "MANIFEST_FILE",
    "PITCH_BANDS",
    "RECIPES_FILE",
    "Corpus",
    "EventRecipe",
    "class_timbre",
    "derive_sav",
    "generate_corpus",
    "random_recipe",
    "render",
    "sample_classes",
    "supported_attributes",
]

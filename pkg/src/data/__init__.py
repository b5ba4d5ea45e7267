"""Corpus manifests and sample loading."""
from .manifest import (
    Sample,
    format_manifest,
    load_samples,
    parse_manifest,
    read_manifest,
)

__all__ = [
    "Sample",
    "format_manifest",
    "load_samples",
    "parse_manifest",
    "read_manifest",
]

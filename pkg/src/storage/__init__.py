"""Artifact storage for corpora, reports and visualizations."""

from .base import ArtifactStore
from .factory import create_storage
from .local import LocalArtifactStore

__all__ = ["ArtifactStore", "LocalArtifactStore", "create_storage"]

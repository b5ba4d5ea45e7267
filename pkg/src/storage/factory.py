"""Factory for creating the artifact store for a run."""

import logging

from .base import ArtifactStore
from .local import LocalArtifactStore

logger = logging.getLogger(__name__)


def create_storage(storage_type: str = "local", base_path: str = ".") -> ArtifactStore:
    """
    Create an artifact store.

    Args:
        storage_type: Type of storage (only 'local' is supported)
        base_path: Root directory of the store

    Returns:
        ArtifactStore rooted at `base_path`

    Raises:
        ValueError: If the storage type is not supported

    Examples:
        >>> store = create_storage('local', base_path='corpus')
    """
    storage_type = storage_type.lower()

    if storage_type == "local":
        logger.debug(f"Creating local artifact store at: {base_path}")
        return LocalArtifactStore(base_path=base_path)

    logger.error(f"Unsupported storage type: {storage_type}")
    raise ValueError(f"Unsupported storage type: {storage_type}. Supported types: local")

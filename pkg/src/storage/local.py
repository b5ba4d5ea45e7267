from pathlib import Path
from typing import BinaryIO

from .base import ArtifactStore


class LocalArtifactStore(ArtifactStore):
    """
    Artifact store on the local filesystem.

    Parent directories are created on write; paths may not escape the root.
    """

    def __init__(self, base_path: str):
        self.base_path = Path(base_path).resolve()
        self.base_path.mkdir(parents=True, exist_ok=True)

    def resolve(self, path: str) -> Path:
        resolved = (self.base_path / path).resolve()
        if resolved != self.base_path and self.base_path not in resolved.parents:
            raise ValueError(f"Path {path} escapes base directory")
        return resolved

    def write_bytes(self, data: bytes, destination: str) -> str:
        dest_path = self.resolve(destination)
        dest_path.parent.mkdir(parents=True, exist_ok=True)
        dest_path.write_bytes(data)
        return str(dest_path)

    def open_for_writing(self, destination: str) -> BinaryIO:
        dest_path = self.resolve(destination)
        dest_path.parent.mkdir(parents=True, exist_ok=True)
        return open(dest_path, "wb")

from abc import ABC, abstractmethod
from pathlib import Path
from typing import BinaryIO


class ArtifactStore(ABC):
    """
    Abstract base class for writing pipeline artifacts.

    Corpus WAVs, manifests, dictionaries, evaluation reports and similarity
    map images are all written through a store rooted at one output location.
    Inputs are read straight from their paths.
    """

    @abstractmethod
    def write_bytes(self, data: bytes, destination: str) -> str:
        """
        Write binary data.

        Args:
            data: Bytes to write
            destination: Path relative to the store root

        Returns:
            Full path of the written artifact
        """
        raise NotImplementedError

    def write_text(self, text: str, destination: str) -> str:
        """Write UTF-8 text; newline characters are written as given."""
        return self.write_bytes(text.encode("utf-8"), destination)

    @abstractmethod
    def open_for_writing(self, destination: str) -> BinaryIO:
        """
        Open a binary handle, for writers (e.g. soundfile) that stream into a file object.

        Args:
            destination: Path relative to the store root

        Returns:
            File-like object open for binary writing
        """
        raise NotImplementedError

    @abstractmethod
    def resolve(self, path: str) -> Path:
        """Absolute location of an artifact inside the store."""
        raise NotImplementedError

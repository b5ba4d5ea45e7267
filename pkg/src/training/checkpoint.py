"""
Binary checkpoint format (all integers little-endian):

    magic        4 bytes   b"SAVN"
    version      uint32
    config_len   uint32    followed by the TrainConfig as UTF-8 JSON
    tensor_count uint32
    per tensor:  uint16 name length, UTF-8 name, uint8 rank, uint32 dims[rank],
                 float32 data (row-major, little-endian)
"""
import logging
import struct
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, Union

import numpy as np
from pydantic import ValidationError

from src.errors import CheckpointFormatError
from src.models import TrainConfig
from src.network import SAVNet
from src.tensor.tensor import MAX_RANK

logger = logging.getLogger(__name__)

MAGIC = b"SAVN"
FORMAT_VERSION = 1
_FLOAT = np.dtype("<f4")


@dataclass
class ModelCheckpoint:
    config: TrainConfig
    tensors: Dict[str, np.ndarray] = field(default_factory=dict)
    version: int = FORMAT_VERSION


def checkpoint_from_model(model: SAVNet, config: TrainConfig) -> ModelCheckpoint:
    """Snapshot parameters quantized to 32-bit floats."""
    tensors = {name: t.data.astype(_FLOAT) for name, t in model.named_parameters()}
    return ModelCheckpoint(config=config, tensors=tensors)


def model_from_checkpoint(checkpoint: ModelCheckpoint) -> SAVNet:
    config = checkpoint.config
    model = SAVNet(config.encoder, config.basemod, seed=config.seed)
    model.load_arrays({name: a.astype(np.float64) for name, a in checkpoint.tensors.items()})
    return model


def encode_checkpoint(checkpoint: ModelCheckpoint) -> bytes:
    config_json = checkpoint.config.model_dump_json(by_alias=True).encode("utf-8")
    parts = [
        MAGIC,
        struct.pack("<II", checkpoint.version, len(config_json)),
        config_json,
        struct.pack("<I", len(checkpoint.tensors)),
    ]
    for name, array in checkpoint.tensors.items():
        encoded_name = name.encode("utf-8")
        parts.append(struct.pack("<H", len(encoded_name)))
        parts.append(encoded_name)
        parts.append(struct.pack("<B", array.ndim))
        parts.append(struct.pack(f"<{array.ndim}I", *array.shape))
        parts.append(np.ascontiguousarray(array, dtype=_FLOAT).tobytes())
    return b"".join(parts)


class _Reader:
    def __init__(self, data: bytes):
        self.data = data
        self.offset = 0

    def take(self, n: int, what: str) -> bytes:
        if self.offset + n > len(self.data):
            raise CheckpointFormatError(
                f"Truncated checkpoint while reading {what}: "
                f"need {n} bytes at offset {self.offset}, "
                f"{len(self.data) - self.offset} left"
            )
        chunk = self.data[self.offset:self.offset + n]
        self.offset += n
        return chunk

    def unpack(self, fmt: str, what: str):
        return struct.unpack(fmt, self.take(struct.calcsize(fmt), what))

    @property
    def remaining(self) -> int:
        return len(self.data) - self.offset


def decode_checkpoint(data: bytes) -> ModelCheckpoint:
    """
    Parse checkpoint bytes; nothing is returned unless the whole payload is valid.

    Raises:
        CheckpointFormatError: On bad magic, unsupported version, truncation or bad dims
    """
    reader = _Reader(data)
    magic = reader.take(4, "magic")
    if magic != MAGIC:
        raise CheckpointFormatError(f"Bad magic {magic!r}, expected {MAGIC!r}")
    version, config_len = reader.unpack("<II", "header")
    if version != FORMAT_VERSION:
        raise CheckpointFormatError(
            f"Unsupported checkpoint version {version}, expected {FORMAT_VERSION}"
        )

    try:
        config = TrainConfig.model_validate_json(reader.take(config_len, "config"))
    except ValidationError as e:
        raise CheckpointFormatError(f"Invalid config block: {e}") from e

    (count,) = reader.unpack("<I", "tensor count")
    tensors: Dict[str, np.ndarray] = {}
    for i in range(count):
        (name_len,) = reader.unpack("<H", f"tensor {i} name length")
        name = reader.take(name_len, f"tensor {i} name").decode("utf-8")
        (rank,) = reader.unpack("<B", f"{name} rank")
        if rank > MAX_RANK:
            raise CheckpointFormatError(f"Tensor {name} has rank {rank}, maximum is {MAX_RANK}")
        dims = reader.unpack(f"<{rank}I", f"{name} dims")
        if any(d == 0 for d in dims):
            raise CheckpointFormatError(f"Tensor {name} has a zero dimension: {dims}")
        count_values = int(np.prod(dims, dtype=np.int64)) if dims else 1
        if count_values * _FLOAT.itemsize > reader.remaining:
            raise CheckpointFormatError(
                f"Tensor {name} dims {dims} need {count_values * _FLOAT.itemsize} bytes, "
                f"only {reader.remaining} left"
            )
        raw = reader.take(count_values * _FLOAT.itemsize, f"{name} data")
        tensors[name] = np.frombuffer(raw, dtype=_FLOAT).reshape(dims).copy()

    if reader.remaining:
        raise CheckpointFormatError(f"{reader.remaining} trailing bytes after the last tensor")
    return ModelCheckpoint(config=config, tensors=tensors, version=version)


def save_checkpoint(checkpoint: ModelCheckpoint, path: Union[str, Path]) -> str:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_bytes(encode_checkpoint(checkpoint))
    logger.info(f"Saved checkpoint with {len(checkpoint.tensors)} tensors to {path}")
    return str(path)


def load_checkpoint(path: Union[str, Path]) -> ModelCheckpoint:
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"Checkpoint not found: {path}")
    return decode_checkpoint(path.read_bytes())

"""The fifteen sound attributes and binary sound attribute vectors (SAVs)."""
from typing import Iterable, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator

ATTRIBUTES: Tuple[str, ...] = (
    # pitch
    "high-pitched",
    "middle-pitched",
    "low-pitched",
    # length
    "long",
    "middle",
    "short",
    # material
    "wood",
    "metal",
    "plastic",
    "ceramic",
    # other features
    "repeating",
    "noise-like",
    # situation
    "falling",
    "collision",
    "many",
)
NUM_ATTRIBUTES = len(ATTRIBUTES)


class AttributeSchema(BaseModel):
    """Ordered attribute names; order fixes the bit layout of every SAV, CSV and checkpoint."""

    model_config = ConfigDict(frozen=True)

    names: Tuple[str, ...] = ATTRIBUTES

    @field_validator("names")
    @classmethod
    def _check_names(cls, names):
        if len(names) != NUM_ATTRIBUTES:
            raise ValueError(f"expected {NUM_ATTRIBUTES} attributes, got {len(names)}")
        if len(set(names)) != len(names):
            raise ValueError("attribute names must be unique")
        return names

    def index(self, name: str) -> int:
        return self.names.index(name)


DEFAULT_SCHEMA = AttributeSchema()


class SAV(BaseModel):
    """Binary sound attribute vector, one bit per attribute in schema order."""

    model_config = ConfigDict(frozen=True)

    bits: Tuple[int, ...]

    @field_validator("bits", mode="before")
    @classmethod
    def _check_bits(cls, bits):
        bits = tuple(int(b) for b in bits)
        if len(bits) != NUM_ATTRIBUTES:
            raise ValueError(f"SAV needs {NUM_ATTRIBUTES} bits, got {len(bits)}")
        if any(b not in (0, 1) for b in bits):
            raise ValueError(f"SAV bits must be 0 or 1, got {bits}")
        return bits

    @classmethod
    def from_attributes(
        cls, names: Iterable[str], schema: AttributeSchema = DEFAULT_SCHEMA
    ) -> "SAV":
        bits = [0] * NUM_ATTRIBUTES
        for name in names:
            bits[schema.index(name)] = 1
        return cls(bits=bits)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.bits, dtype=np.float64)

    def attributes(self, schema: AttributeSchema = DEFAULT_SCHEMA) -> Tuple[str, ...]:
        return tuple(name for name, bit in zip(schema.names, self.bits) if bit)


def scale_sav(sav: SAV) -> np.ndarray:
    """phi'(y) = 2 * phi(y) - 1, mapping {0, 1} to {-1, +1}."""
    return 2.0 * sav.as_array() - 1.0


def unscale_sav(scaled: np.ndarray) -> SAV:
    """Inverse of `scale_sav` for vectors in {-1, +1}."""
    scaled = np.asarray(scaled)
    if not np.all(np.isin(scaled, (-1.0, 1.0))):
        raise ValueError(f"scaled SAV entries must be -1 or +1, got {scaled}")
    return SAV(bits=((scaled + 1.0) / 2.0).astype(int))

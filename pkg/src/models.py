"""
Core data models for the pipeline.

Configuration and record schemas are pydantic models so every value coming
from a config file, manifest or checkpoint header is validated in one place.
Array-carrying types (spectrograms, clips, parameters) live next to the code
that produces them.
"""
from typing import List, Literal, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from src.errors import ConfigurationError

DESK_BLOCKS: List[Tuple[int, int]] = [(16, 1), (32, 1), (64, 1)]
VGGISH_BLOCKS: List[Tuple[int, int]] = [(64, 1), (128, 1), (256, 2), (512, 2)]

ENCODER_PRESETS = {
    "desk": DESK_BLOCKS,
    "vggish": VGGISH_BLOCKS,
}


class EncoderConfig(BaseModel):
    """
    VGG-style encoder: each block is `conv_count` 3x3 same-padded convolutions
    with ReLU followed by one 2x2 max pool.
    """

    model_config = ConfigDict(frozen=True)

    blocks: List[Tuple[int, int]] = Field(default_factory=lambda: list(DESK_BLOCKS))
    in_channels: int = 1
    input_height: int = 80
    input_width: int = 100

    @field_validator("blocks")
    @classmethod
    def _check_blocks(cls, blocks):
        if not blocks:
            raise ValueError("encoder needs at least one block")
        for out_channels, conv_count in blocks:
            if out_channels < 1 or conv_count < 1:
                raise ValueError(f"invalid block ({out_channels}, {conv_count})")
        return blocks

    @model_validator(mode="after")
    def _check_output(self):
        _, height, width = self.output_shape()
        if height < 1 or width < 1:
            raise ValueError(
                f"{len(self.blocks)} pooling stages reduce a "
                f"{self.input_height}x{self.input_width} input to {height}x{width}"
            )
        return self

    @classmethod
    def preset(cls, name: str) -> "EncoderConfig":
        try:
            return cls(blocks=list(ENCODER_PRESETS[name]))
        except KeyError:
            raise ConfigurationError(
                f"Unknown encoder preset: {name}. Supported presets: {', '.join(ENCODER_PRESETS)}"
            ) from None

    def output_shape(self) -> Tuple[int, int, int]:
        """(C, H, W) of the feature map for the configured input size."""
        height, width = self.input_height, self.input_width
        for _ in self.blocks:
            height //= 2
            width //= 2
        return self.blocks[-1][0], height, width


class BaseModConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    hidden: int = Field(default=128, ge=1)
    hidden_layers: int = Field(default=2, ge=0)


class LossConfig(BaseModel):
    """Training objective: BCE or scaled-softmax plus an optional weighted local term."""

    model_config = ConfigDict(frozen=True, populate_by_name=True)

    mode: Literal["bce", "sm"] = "sm"
    use_local: bool = True
    lambda_: float = Field(default=10.0, ge=0.0, alias="lambda")

    @classmethod
    def preset(cls, name: str) -> "LossConfig":
        """The four comparison rows: bce, bce+local, sm, sm+local."""
        presets = {
            "bce": cls(mode="bce", use_local=False, lambda_=1.0),
            "bce+local": cls(mode="bce", use_local=True, lambda_=1.0),
            "sm": cls(mode="sm", use_local=False, lambda_=10.0),
            "sm+local": cls(mode="sm", use_local=True, lambda_=10.0),
        }
        try:
            return presets[name]
        except KeyError:
            raise ConfigurationError(
                f"Unknown loss preset: {name}. Supported presets: {', '.join(presets)}"
            ) from None

    @property
    def name(self) -> str:
        return f"{self.mode}+local" if self.use_local else self.mode


class TrainConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    epochs: int = Field(default=30, ge=1)
    batch_size: int = Field(default=16, ge=1)
    learning_rate: float = Field(default=1e-3, ge=0.0)
    optimizer: Literal["adam", "sgd-momentum"] = "adam"
    seed: int = 0
    loss: LossConfig = Field(default_factory=LossConfig)
    encoder: EncoderConfig = Field(default_factory=EncoderConfig)
    basemod: BaseModConfig = Field(default_factory=BaseModConfig)


class ManifestRow(BaseModel):
    """One corpus clip: WAV path (relative to the manifest), class label and split."""

    model_config = ConfigDict(frozen=True)

    path: str
    label: str
    split: Literal["train", "test"]

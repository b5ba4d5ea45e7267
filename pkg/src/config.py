"""Loading of `key = value` training configs and environment settings."""
import logging
import os
import re
from pathlib import Path
from typing import Any, Dict, List, Tuple

from pydantic import ValidationError

from src.errors import ConfigurationError
from src.models import ENCODER_PRESETS, TrainConfig

logger = logging.getLogger(__name__)

THREADS_ENV = "SAVNET_THREADS"

# config key -> (section, field)
_KEYS = {
    "epochs": (None, "epochs"),
    "batch_size": (None, "batch_size"),
    "learning_rate": (None, "learning_rate"),
    "optimizer": (None, "optimizer"),
    "seed": (None, "seed"),
    "loss.mode": ("loss", "mode"),
    "loss.use_local": ("loss", "use_local"),
    "loss.lambda": ("loss", "lambda"),
    "encoder.blocks": ("encoder", "blocks"),
    "basemod.hidden": ("basemod", "hidden"),
    "basemod.hidden_layers": ("basemod", "hidden_layers"),
}

_BLOCK = re.compile(r"^\s*(\d+)\s*[xX:]\s*(\d+)\s*$")


def parse_blocks(value: str) -> List[Tuple[int, int]]:
    """
    Parse an encoder block list.

    Examples:
        >>> parse_blocks("16x1, 32x1, 64x1")
        [(16, 1), (32, 1), (64, 1)]
        >>> parse_blocks("vggish")
        [(64, 1), (128, 1), (256, 2), (512, 2)]
    """
    value = value.strip()
    if value in ENCODER_PRESETS:
        return list(ENCODER_PRESETS[value])
    blocks = []
    for part in value.split(","):
        match = _BLOCK.match(part)
        if not match:
            raise ConfigurationError(
                f"Invalid encoder block '{part.strip()}'; expected '<channels>x<convs>' "
                f"or one of: {', '.join(ENCODER_PRESETS)}"
            )
        blocks.append((int(match.group(1)), int(match.group(2))))
    return blocks


def parse_train_config(text: str) -> TrainConfig:
    """Parse the body of a training config file and validate it."""
    raw: Dict[str, Any] = {}
    for line_number, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigurationError(f"line {line_number}: expected 'key = value', got '{line}'")
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in _KEYS:
            raise ConfigurationError(
                f"line {line_number}: unknown key '{key}'. Known keys: {', '.join(_KEYS)}"
            )
        section, field = _KEYS[key]
        parsed: Any = parse_blocks(value) if key == "encoder.blocks" else value
        target = raw if section is None else raw.setdefault(section, {})
        target[field] = parsed

    try:
        return TrainConfig.model_validate(raw)
    except ValidationError as e:
        raise ConfigurationError(f"Invalid training config: {e}") from e


def load_train_config(path: str) -> TrainConfig:
    config_path = Path(path)
    if not config_path.exists():
        raise FileNotFoundError(f"Config file not found: {config_path}")
    config = parse_train_config(config_path.read_text(encoding="utf-8"))
    logger.debug(f"Loaded training config from {config_path}: {config.model_dump(by_alias=True)}")
    return config


def thread_count() -> int:
    """Parallelism degree from SAVNET_THREADS (default 1). Never changes results."""
    value = os.environ.get(THREADS_ENV, "1")
    try:
        threads = int(value)
    except ValueError:
        raise ConfigurationError(
            f"{THREADS_ENV} must be a positive integer, got '{value}'"
        ) from None
    if threads < 1:
        raise ConfigurationError(f"{THREADS_ENV} must be a positive integer, got '{value}'")
    return threads

"""Exception hierarchy shared by every stage of the pipeline."""


class SavnetError(Exception):
    """Base class for all errors raised by this package."""


class ShapeError(SavnetError, ValueError):
    """Tensor or parameter dimensions do not agree."""


class NonFiniteError(SavnetError, FloatingPointError):
    """A tensor holds NaN or Inf values."""


class AudioFormatError(SavnetError, ValueError):
    """A WAV file violates the supported format (PCM-16, mono, RIFF/WAVE)."""

    def __init__(self, field: str, message: str):
        self.field = field
        super().__init__(f"{field}: {message}")


class DictionaryParseError(SavnetError, ValueError):
    """A class dictionary CSV row could not be parsed."""

    def __init__(self, row: int, message: str):
        self.row = row
        super().__init__(f"row {row}: {message}")


class ConfigurationError(SavnetError, ValueError):
    """Invalid configuration (model, training, filterbank or candidate set)."""


class ContractError(SavnetError, ValueError):
    """A caller broke an operation contract (e.g. training on an unseen class)."""


class CheckpointFormatError(SavnetError, ValueError):
    """A checkpoint file is malformed, truncated or of an unsupported version."""


class TrainingDivergedError(SavnetError, RuntimeError):
    """The training loss became non-finite."""

    def __init__(self, epoch: int, batch: int, loss: float):
        self.epoch = epoch
        self.batch = batch
        self.loss = loss
        super().__init__(f"Non-finite loss {loss} at epoch {epoch}, batch {batch}")

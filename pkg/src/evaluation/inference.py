"""Zero-shot inference by nearest SAV in squared Euclidean distance."""
from typing import List, Literal, Sequence, Tuple

import numpy as np
from scipy.special import expit

from src.attributes import SAV
from src.audio import MelSpectrogram
from src.errors import ConfigurationError
from src.network import SAVNet

Branch = Literal["global", "local"]


def attribute_scores(model: SAVNet, mel: MelSpectrogram, branch: Branch = "global") -> np.ndarray:
    """
    Attribute scores in [0, 1] for one input.

    global: Sigmoid(g(x)) from BaseMod (the default classification branch).
    local: h(x) from ProtoMod clipped to [0, 1].
    """
    out = model.forward_mel(mel)
    if branch == "global":
        return expit(out.g.data)
    if branch == "local":
        return np.clip(out.h.data, 0.0, 1.0)
    raise ValueError(f"Unsupported branch: {branch}. Supported: global, local")


def squared_distances(scores: np.ndarray, candidates: Sequence[Tuple[str, SAV]]) -> np.ndarray:
    savs = np.stack([sav.as_array() for _, sav in candidates])
    return np.sum((savs - scores[None, :]) ** 2, axis=1)


def classify_scores(scores: np.ndarray, candidates: Sequence[Tuple[str, SAV]]) -> str:
    """
    Label of the candidate SAV nearest to `scores`.

    Exact distance ties go to the lexicographically smallest label.

    Raises:
        ConfigurationError: If there are no candidates
    """
    if not candidates:
        raise ConfigurationError("classify needs at least one candidate class")
    distances = squared_distances(scores, candidates)
    best = distances.min()
    tied: List[str] = [label for (label, _), d in zip(candidates, distances) if d == best]
    return min(tied)


def classify(
    mel: MelSpectrogram,
    model: SAVNet,
    candidates: Sequence[Tuple[str, SAV]],
    branch: Branch = "global",
) -> str:
    if not candidates:
        raise ConfigurationError("classify needs at least one candidate class")
    return classify_scores(attribute_scores(model, mel, branch), candidates)

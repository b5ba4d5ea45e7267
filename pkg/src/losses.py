"""
Training objectives.

    bce_loss      mean over attributes of BCE(Sigmoid(g), phi(y))
    softmax_loss  cross-entropy over seen classes with logits phi'(y')^T Tanh(g)
    local_loss    ||h - phi(y)||^2 (sum over attributes)
    total_loss    mode loss + lambda * local loss
"""
import numpy as np
from scipy.special import expit, logsumexp

from src.attributes import SAV, ClassDictionary
from src.errors import ContractError, ShapeError
from src.models import LossConfig
from src.tensor import Function, Tensor, activation, add, matmul, scale


class BCEWithLogits(Function):
    def forward(self, g, target):
        if g.shape != target.shape:
            raise ShapeError(f"bce_loss shape mismatch: scores {g.shape} vs target {target.shape}")
        self.sigma = expit(g)
        self.target = target
        # log(1 + exp(g)) - b * g, written to avoid overflow for large |g|
        per_attribute = np.maximum(g, 0.0) - g * target + np.log1p(np.exp(-np.abs(g)))
        return np.mean(per_attribute)

    def backward(self, grad):
        return grad * (self.sigma - self.target) / self.target.size, None


class SoftmaxCrossEntropy(Function):
    def forward(self, logits, index: int = 0):
        lse = logsumexp(logits)
        self.probabilities = np.exp(logits - lse)
        self.index = index
        return lse - logits[index]

    def backward(self, grad):
        d = self.probabilities.copy()
        d[self.index] -= 1.0
        return (grad * d,)


class SquaredError(Function):
    def forward(self, h, target):
        if h.shape != target.shape:
            raise ShapeError(
                f"local_loss shape mismatch: scores {h.shape} vs target {target.shape}"
            )
        self.diff = h - target
        return np.sum(self.diff ** 2)

    def backward(self, grad):
        return grad * 2.0 * self.diff, None


def bce_loss(g: Tensor, sav: SAV) -> Tensor:
    return BCEWithLogits.apply(g, Tensor(sav.as_array()))


def softmax_loss(g: Tensor, true_label: str, seen_dict: ClassDictionary) -> Tensor:
    """
    Scaled softmax loss over the seen classes of `seen_dict`.

    Raises:
        ContractError: If `true_label` is not a seen class
    """
    labels, matrix = seen_dict.seen_scaled_matrix
    try:
        index = labels.index(true_label)
    except ValueError:
        raise ContractError(f"softmax_loss: '{true_label}' is not a seen class") from None
    logits = matmul(Tensor(matrix), activation("tanh", g))
    return SoftmaxCrossEntropy.apply(logits, index=index)


def local_loss(h: Tensor, sav: SAV) -> Tensor:
    return SquaredError.apply(h, Tensor(sav.as_array()))


def total_loss(
    config: LossConfig, g: Tensor, h: Tensor, label: str, dictionary: ClassDictionary
) -> Tensor:
    """Per-sample objective selected by `config`; the local term is skipped when disabled."""
    sav = dictionary.sav(label)
    if config.mode == "bce":
        loss = bce_loss(g, sav)
    else:
        loss = softmax_loss(g, label, dictionary)
    if config.use_local:
        loss = add(loss, scale(local_loss(h, sav), config.lambda_))
    return loss

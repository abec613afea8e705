"""
核函数
gaussian: k(x,y) = exp(−γ‖x−y‖²)；linear: k(x,y) = xᵀy
"""

import logging
from dataclasses import dataclass, replace
from typing import Optional

import numpy as np
from scipy.spatial.distance import cdist

from errors import DimensionError, InvalidInput, InvalidSpec

logger = logging.getLogger(__name__)

KERNEL_KINDS = ("gaussian", "linear")


@dataclass(frozen=True)
class KernelSpec:
    """gamma=None 表示 auto：1/(d·Var(展平的训练数据))"""
    kind: str = "gaussian"
    gamma: Optional[float] = None

    def __post_init__(self):
        if self.kind not in KERNEL_KINDS:
            raise InvalidSpec(f"未知核类型: {self.kind}，可选 {KERNEL_KINDS}")
        if self.gamma is not None and not (np.isfinite(self.gamma) and self.gamma > 0):
            raise InvalidSpec(f"gamma 必须 > 0，实际 {self.gamma}")

    @property
    def is_resolved(self) -> bool:
        return self.kind == "linear" or self.gamma is not None

    def resolve(self, X) -> "KernelSpec":
        """auto gamma 按训练数据 X (d×n) 定下来"""
        if self.is_resolved:
            return self
        return replace(self, gamma=auto_gamma(X))


def auto_gamma(X) -> float:
    """1/(d·Var(X))，方差为展平数组的 1/n 形式"""
    X = np.asarray(X, dtype=float)
    variance = float(np.var(X))
    if variance <= 0:
        logger.warning("⚠️ 训练数据方差为0，gamma 取 1.0")
        return 1.0
    return 1.0 / (X.shape[0] * variance)


def _columns(M, name: str) -> np.ndarray:
    M = np.asarray(M, dtype=float)
    if M.ndim != 2:
        raise InvalidInput(f"{name} 必须是 d×n 矩阵")
    if not np.all(np.isfinite(M)):
        raise InvalidInput(f"{name} 含非有限值")
    return M


def gram(spec: KernelSpec, A, B) -> np.ndarray:
    """K̂ᵢⱼ = k(aᵢ, bⱼ)，A: d×n₁，B: d×n₂"""
    A = _columns(A, "A")
    B = _columns(B, "B")
    if A.shape[0] != B.shape[0]:
        raise DimensionError(f"A 与 B 维数不一致: {A.shape[0]} vs {B.shape[0]}")
    if A.shape[1] == 0 or B.shape[1] == 0:
        return np.zeros((A.shape[1], B.shape[1]))
    if spec.kind == "linear":
        return A.T @ B
    spec = spec.resolve(A)
    return np.exp(-spec.gamma * cdist(A.T, B.T, "sqeuclidean"))

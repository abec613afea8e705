"""
公平性/准确率权衡表示：(U_fairᵀx; λ·U_stᵀx)
"""

from dataclasses import dataclass
from typing import Any

import numpy as np

from errors import DimensionError, InvalidInput
from fair_core.pca import ProjectionModel


@dataclass(frozen=True)
class TradeoffModel:
    """fair 可以是 ProjectionModel 或 KernelModel（都有 embed / d / k）"""
    fair: Any
    standard: ProjectionModel
    lam: float

    def __post_init__(self):
        if not 0.0 <= self.lam <= 1.0:
            raise InvalidInput(f"λ 必须在 [0, 1] 内，实际 {self.lam}")
        if self.standard.method != "standard":
            raise InvalidInput(f"standard 子模型方法必须为 standard，实际 {self.standard.method}")
        if self.fair.d != self.standard.d:
            raise DimensionError(f"两个子模型维数不一致: {self.fair.d} vs {self.standard.d}")

    @property
    def d(self) -> int:
        return self.standard.d

    @property
    def k(self) -> int:
        return self.fair.k + self.standard.k

    def with_lambda(self, lam: float) -> "TradeoffModel":
        return TradeoffModel(fair=self.fair, standard=self.standard, lam=lam)

    def embed(self, X_new) -> np.ndarray:
        return tradeoff_transform(self, X_new)


def tradeoff_transform(tm: TradeoffModel, X_new) -> np.ndarray:
    """公平嵌入在上，λ缩放的标准嵌入在下"""
    X_new = np.asarray(X_new, dtype=float)
    if X_new.ndim != 2 or X_new.shape[0] != tm.d:
        raise DimensionError(f"输入行数与模型维数 d={tm.d} 不一致")
    return np.vstack([tm.fair.embed(X_new), tm.lam * tm.standard.embed(X_new)])

"""
L2正则逻辑回归（全批量、确定性、零初始化）
目标 = 平均log损失 + reg·‖w‖²（偏置不正则）
"""

import logging
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np
from scipy.optimize import minimize

from config.settings import Config
from errors import DegenerateInput, DimensionError, InvalidInput

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LinearClassifier:
    """线性分类器 sign(wᵀx + b)"""
    weights: np.ndarray
    bias: float
    reg_strength: float
    loss_history: Tuple[float, ...] = ()
    n_iter: int = 0
    converged: bool = True

    def decision_function(self, features) -> np.ndarray:
        features = np.asarray(features, dtype=float)
        if features.ndim != 2 or features.shape[0] != self.weights.shape[0]:
            raise DimensionError(f"特征维数与分类器维数 {self.weights.shape[0]} 不一致")
        return self.weights @ features + self.bias

    def predict_proba(self, features) -> np.ndarray:
        return 1.0 / (1.0 + np.exp(-self.decision_function(features)))

    def predict(self, features) -> np.ndarray:
        return (self.decision_function(features) > 0).astype(int)

    def accuracy(self, features, targets) -> float:
        targets = np.asarray(targets).astype(int).reshape(-1)
        return float(np.mean(self.predict(features) == targets))


class LogisticObjective:
    """
    逻辑回归目标函数，可直接交给 scipy 优化器
    params = (w₁..w_k, b)，features 为 k×n，targets 取 {0,1}
    """

    def __init__(self, features: np.ndarray, targets: np.ndarray, reg: float):
        self.features = features
        self.signs = 2.0 * targets - 1.0
        self.reg = reg
        self.n = features.shape[1]

    def __call__(self, params: np.ndarray) -> Tuple[float, np.ndarray]:
        w, b = params[:-1], params[-1]
        margins = self.signs * (w @ self.features + b)
        # log(1 + e^{−m})，数值稳定
        loss = float(np.logaddexp(0.0, -margins).mean()) + self.reg * float(w @ w)
        coef = -self.signs * np.exp(-np.logaddexp(0.0, margins)) / self.n
        grad = np.empty_like(params)
        grad[:-1] = self.features @ coef + 2.0 * self.reg * w
        grad[-1] = coef.sum()
        return loss, grad


def train_logreg(features,
                 targets,
                 reg_strength: float = None,
                 max_iter: int = None,
                 gtol: float = None,
                 init: Optional[np.ndarray] = None) -> LinearClassifier:
    """L-BFGS 全批量训练；停止条件：梯度范数 ≤ gtol 或达到 max_iter"""
    reg_strength = Config.DOWNSTREAM_REG if reg_strength is None else reg_strength
    max_iter = Config.LOGREG_MAX_ITER if max_iter is None else max_iter
    gtol = Config.LOGREG_GTOL if gtol is None else gtol

    features = np.asarray(features, dtype=float)
    targets = np.asarray(targets).astype(int).reshape(-1)
    if features.ndim != 2 or features.shape[1] != targets.shape[0]:
        raise DimensionError("features (k×n) 与 targets (n) 长度不一致")
    if not np.all(np.isfinite(features)):
        raise InvalidInput("features 含非有限值")
    if reg_strength < 0:
        raise InvalidInput(f"reg_strength 必须 ≥ 0，实际 {reg_strength}")
    present = np.unique(targets)
    if present.size < 2:
        raise DegenerateInput(f"目标只有一个类别: {present.tolist()}")

    objective = LogisticObjective(features, targets, reg_strength)
    x0 = np.zeros(features.shape[0] + 1) if init is None else np.asarray(init, dtype=float).copy()
    history: List[float] = [objective(x0)[0]]

    def record(params):
        history.append(objective(params)[0])

    result = minimize(
        objective, x0, jac=True, method="L-BFGS-B", callback=record,
        # L-BFGS-B 的 gtol 是无穷范数，除以 √p 使 ‖g‖₂ ≤ gtol
        options={"maxiter": max_iter, "gtol": gtol / np.sqrt(x0.size), "ftol": 1e-15},
    )
    grad_norm = float(np.linalg.norm(objective(result.x)[1]))
    converged = grad_norm <= gtol
    if not converged:
        logger.debug(f"逻辑回归未达到梯度阈值: ‖g‖={grad_norm:.2e}, 迭代 {result.nit}, {result.message}")

    return LinearClassifier(
        weights=result.x[:-1].copy(),
        bias=float(result.x[-1]),
        reg_strength=reg_strength,
        loss_history=tuple(history),
        n_iter=int(result.nit),
        converged=converged,
    )

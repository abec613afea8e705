"""
公平核PCA
R = null(ZᵀK)，RᵀKKRΛ = RᵀKRΛW（B 加抖动），训练表示 ΛᵀRᵀK，测试表示 ΛᵀRᵀK̂
模型保存训练数据用于计算交叉核矩阵，内存 O(dn)
"""

import logging
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Any, Dict, Optional, Sequence

import numpy as np

from config.settings import Config
from errors import DimensionError
from fair_core.constraint import build_constraint_matrix
from fair_core.dataset import Dataset
from fair_core.pca import eo_subset_indices
from kernel.kernels import KernelSpec, gram
from linalg import gen_sym_eig_topk, nullspace_basis

logger = logging.getLogger(__name__)

stats = defaultdict(int)


@dataclass(frozen=True)
class KernelModel:
    """Lambda: s×k，R: n×s，train_X: d×n；spec 的 gamma 已确定"""
    Lambda: np.ndarray
    R: np.ndarray
    train_X: np.ndarray
    spec: KernelSpec
    k: int
    jitter: float = Config.KERNEL_JITTER
    fit_options: Dict[str, Any] = field(default_factory=dict)

    @property
    def d(self) -> int:
        return self.train_X.shape[0]

    @property
    def coefficients(self) -> np.ndarray:
        """B = RΛ（n×k）"""
        return self.R @ self.Lambda

    def training_embedding(self) -> np.ndarray:
        """ΛᵀRᵀK：训练数据的表示"""
        return kernel_transform(self, self.train_X)

    def embed(self, X_new) -> np.ndarray:
        return kernel_transform(self, X_new)


def fit_fair_kernel_pca(data: Dataset,
                        k: int,
                        attributes: Optional[Sequence[int]] = None,
                        spec: KernelSpec = KernelSpec(),
                        jitter: float = None,
                        eo_mode: bool = False,
                        drop_degenerate: bool = False) -> KernelModel:
    """Algorithm：K → R = null(ZᵀK) → 广义特征问题前k个 → Λ"""
    if jitter is None:
        jitter = Config.KERNEL_JITTER
    if attributes is None:
        attributes = list(range(data.n_attributes))

    fit_data = data.subset(eo_subset_indices(data, attributes)) if eo_mode else data

    spec = spec.resolve(fit_data.X)
    K = gram(spec, fit_data.X, fit_data.X)
    constraint = build_constraint_matrix(fit_data, attributes, drop_degenerate=drop_degenerate)

    n = fit_data.n
    R = np.eye(n) if constraint.is_empty else nullspace_basis(constraint.Z.T @ K)
    s = R.shape[1]
    if k < 1 or k > s:
        raise DimensionError(f"k={k} 超过核约束零空间维数 {s}", achievable_max=s)

    KR = K @ R
    A = KR.T @ KR
    B = R.T @ KR
    result = gen_sym_eig_topk(A, B, k, jitter)

    stats["fair_kernel"] += 1
    logger.info(f"✅ 公平核PCA完成: n={n}, k={k}, c={constraint.c}, s={s}, kind={spec.kind}")
    return KernelModel(
        Lambda=result.vectors,
        R=R,
        train_X=fit_data.X.copy(),
        spec=spec,
        k=k,
        jitter=jitter,
        fit_options={"attributes": list(attributes), "eo_mode": eo_mode},
    )


def kernel_transform(model: KernelModel, X_new) -> np.ndarray:
    """ΛᵀRᵀK̂，K̂ = gram(train_X, X_new)"""
    X_new = np.asarray(X_new, dtype=float)
    if X_new.ndim != 2 or X_new.shape[0] != model.d:
        raise DimensionError(f"输入行数与模型维数 d={model.d} 不一致")
    if X_new.shape[1] == 0:
        return np.zeros((model.k, 0))
    K_hat = gram(model.spec, model.train_X, X_new)
    return model.coefficients.T @ K_hat

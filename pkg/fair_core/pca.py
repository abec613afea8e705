"""
闭式公平PCA拟合
标准PCA / 公平PCA（两组、多组、多属性、EO模式）/ Fair PCA-S（协方差近似对齐）
"""

import logging
import math
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Any, Dict, Optional, Sequence, Tuple

import numpy as np

from config.settings import Config
from errors import DegenerateInput, DimensionError, InvalidInput
from fair_core.constraint import ConstraintMatrix, build_constraint_matrix
from fair_core.dataset import Dataset
from linalg import canonical_signs, nullspace_basis, sym_eig_topk

logger = logging.getLogger(__name__)

METHODS = ("standard", "fair", "fair_s")

# 进程内拟合计数
stats = defaultdict(int)


@dataclass(frozen=True)
class ProjectionModel:
    """拟合好的投影 U (d×k)，拟合后不可变"""
    U: np.ndarray
    method: str
    k: int
    center: bool = False
    mean: Optional[np.ndarray] = None
    fit_options: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.method not in METHODS:
            raise InvalidInput(f"未知方法: {self.method}")
        if self.center and self.mean is None:
            raise InvalidInput("中心化模型必须保存训练均值")

    @property
    def d(self) -> int:
        return self.U.shape[0]

    def embed(self, X_new) -> np.ndarray:
        return transform(self, X_new)


def _check_k(k: int, d: int):
    if k < 1 or k > d:
        raise DimensionError(f"k={k} 超出范围 [1, {d}]", achievable_max=d)


def _check_k_positive(k: int):
    """上限要等零空间算出后才知道"""
    if k < 1:
        raise DimensionError(f"k={k} 必须 ≥ 1")


def _fit_matrix(X: np.ndarray, center: bool) -> Tuple[np.ndarray, Optional[np.ndarray]]:
    if not center:
        return X, None
    mean = X.mean(axis=1)
    return X - mean[:, None], mean


def _top_directions(R: np.ndarray, X_obj: np.ndarray, k: int) -> np.ndarray:
    """在 span(R) 内取 X_obj X_objᵀ 的前k个主方向：U = RΛ"""
    XR = R.T @ X_obj
    result = sym_eig_topk(XR @ XR.T, k)
    return canonical_signs(R @ result.vectors)


def _constraint_nullspace(X_fit: np.ndarray, constraint: ConstraintMatrix) -> np.ndarray:
    """R = ZᵀX_fitᵀ 的零空间基；约束为空或数值上为零时返回单位阵"""
    d = X_fit.shape[0]
    if constraint.is_empty:
        return np.eye(d)
    M = constraint.Z.T @ X_fit.T
    scale = max(1.0, float(np.abs(X_fit).max()) * float(np.abs(constraint.Z).sum(axis=0).max()))
    if float(np.abs(M).max()) <= Config.ZERO_CONSTRAINT_TOL * scale:
        # 组均值已相等：问题退化为标准PCA
        logger.info("ZᵀXᵀ 数值上为零，公平约束自动满足")
        return np.eye(d)
    return nullspace_basis(M)


def fit_standard_pca(data: Dataset, k: int, center: bool = False) -> ProjectionModel:
    """标准PCA：U 为 XXᵀ 的前k个特征向量"""
    _check_k(k, data.d)
    X_fit, mean = _fit_matrix(data.X, center)
    U = _top_directions(np.eye(data.d), X_fit, k)
    stats["standard"] += 1
    return ProjectionModel(U=U, method="standard", k=k, center=center, mean=mean,
                           fit_options={"center": center})


def eo_subset_indices(data: Dataset, attributes: Sequence[int]) -> np.ndarray:
    """EO模式的拟合子集：y=1 的样本，每组至少2个正例"""
    if data.labels is None:
        raise DegenerateInput("EO模式需要任务标签")
    mask = data.labels == 1
    for attribute in attributes:
        for group in np.unique(data.groups[attribute]):
            positives = int(np.sum(mask & (data.groups[attribute] == group)))
            if positives < 2:
                raise DegenerateInput(
                    f"EO模式要求每组至少2个正例：属性 {data.group_names[attribute]} 组 {group} 只有 {positives} 个"
                )
    return np.flatnonzero(mask)


def fit_fair_pca(data: Dataset,
                 k: int,
                 attributes: Optional[Sequence[int]] = None,
                 eo_mode: bool = False,
                 center: bool = False,
                 eo_objective: str = "subset",
                 collapse_binary: bool = True,
                 drop_degenerate: bool = False) -> ProjectionModel:
    """
    公平PCA：R = null(ZᵀX_fitᵀ)，Λ = RᵀX_fit X_fitᵀR 的前k个特征向量，U = RΛ
    eo_mode 时约束只用 y=1 的样本；eo_objective="subset" 目标也只用该子集，"all" 目标用全部样本
    """
    _check_k_positive(k)
    if eo_objective not in ("subset", "all"):
        raise InvalidInput(f"eo_objective 必须为 subset 或 all，实际 {eo_objective}")
    if attributes is None:
        attributes = list(range(data.n_attributes))

    fit_data = data.subset(eo_subset_indices(data, attributes)) if eo_mode else data
    constraint = build_constraint_matrix(fit_data, attributes,
                                         collapse_binary=collapse_binary,
                                         drop_degenerate=drop_degenerate)

    X_fit, mean = _fit_matrix(fit_data.X, center)
    R = _constraint_nullspace(X_fit, constraint)
    s = R.shape[1]
    if k > s:
        raise DimensionError(f"k={k} 超过约束零空间维数 {s}", achievable_max=s)

    X_obj = X_fit
    if eo_mode and eo_objective == "all":
        X_obj = data.X - mean[:, None] if center else data.X
    U = _top_directions(R, X_obj, k)

    stats["fair"] += 1
    logger.info(f"✅ 公平PCA完成: d={data.d}, k={k}, c={constraint.c}, s={s}, eo={eo_mode}")
    return ProjectionModel(
        U=U, method="fair", k=k, center=center, mean=mean,
        fit_options={
            "center": center,
            "attributes": list(attributes),
            "eo_mode": eo_mode,
            "eo_objective": eo_objective,
        },
    )


def fair_s_dimension(k: int, f: float, d: int, s: int) -> int:
    """l = max{k, ⌊f·d⌋}，再截断到 min(d−1, s)"""
    return min(max(k, int(math.floor(f * d))), d - 1, s)


def group_covariances(X: np.ndarray, codes: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """两组的组内协方差（1/n_g 归一化）"""
    covariances = []
    for group in (0, 1):
        X_g = X[:, codes == group]
        centered = X_g - X_g.mean(axis=1, keepdims=True)
        covariances.append(centered @ centered.T / X_g.shape[1])
    return covariances[0], covariances[1]


def fit_fair_pca_s(data: Dataset,
                   k: int,
                   attribute: int = 0,
                   f: float = 0.5,
                   center: bool = False) -> ProjectionModel:
    """
    Fair PCA-S：在公平PCA零空间内再取 Rᵀ(Σ₀−Σ₁)R 绝对值最小的 l 个特征方向 Q，
    然后在 span(RQ) 内做PCA：U = RQV
    """
    _check_k_positive(k)
    if not 0 < f <= 1:
        raise InvalidInput(f"f 必须在 (0, 1] 内，实际 {f}")
    if not 0 <= attribute < data.n_attributes:
        raise DimensionError(f"属性下标 {attribute} 超出范围 [0, {data.n_attributes - 1}]")
    codes = data.groups[attribute]
    present = np.unique(codes)
    if present.size != 2 or not np.array_equal(present, [0, 1]):
        raise DegenerateInput(f"Fair PCA-S 需要恰好两个组 (0/1)，实际取值 {present.tolist()}")

    constraint = build_constraint_matrix(data, [attribute])
    X_fit, mean = _fit_matrix(data.X, center)
    R = _constraint_nullspace(X_fit, constraint)
    s = R.shape[1]
    l = fair_s_dimension(k, f, data.d, s)
    if k > l:
        raise DimensionError(f"k={k} 超过 Fair PCA-S 子空间维数 l={l}", achievable_max=l)

    sigma0, sigma1 = group_covariances(X_fit, codes)
    gap = R.T @ (sigma0 - sigma1) @ R
    gap = (gap + gap.T) / 2.0
    values, vectors = np.linalg.eigh(gap)
    # 绝对值最小的 l 个（稳定排序保证确定性）
    order = np.argsort(np.abs(values), kind="stable")[:l]
    Q = vectors[:, order]

    U = _top_directions(R @ Q, X_fit, k)

    stats["fair_s"] += 1
    logger.info(f"✅ Fair PCA-S完成: d={data.d}, k={k}, f={f}, l={l}")
    return ProjectionModel(
        U=U, method="fair_s", k=k, center=center, mean=mean,
        fit_options={
            "center": center,
            "attributes": [attribute],
            "eo_mode": False,
            "f": f,
            "l": l,
        },
    )


def transform(model: ProjectionModel, X_new) -> np.ndarray:
    """Uᵀ(X_new − μ1ᵀ)（中心化模型）或 UᵀX_new"""
    X_new = np.asarray(X_new, dtype=float)
    if X_new.ndim != 2 or X_new.shape[0] != model.d:
        raise DimensionError(f"输入行数 {X_new.shape[0] if X_new.ndim == 2 else X_new.shape} 与模型维数 d={model.d} 不一致")
    if model.center:
        X_new = X_new - model.mean[:, None]
    return model.U.T @ X_new

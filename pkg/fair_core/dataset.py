"""
数据集结构
X 为 d×n（每列一个样本），groups 为 p×n 的属性编码，labels 为可选二值任务标签
"""

import logging
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np

from errors import DegenerateInput, DimensionError, InvalidInput

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Dataset:
    """特征矩阵 + 敏感属性 + 可选标签"""
    X: np.ndarray
    groups: np.ndarray
    labels: Optional[np.ndarray] = None

    # 列名（写回CSV时使用）
    feature_names: Tuple[str, ...] = ()
    group_names: Tuple[str, ...] = ()
    label_name: Optional[str] = None
    # 每个属性编码 0..m_r-1 对应的原始取值
    group_levels: Tuple[Tuple[str, ...], ...] = ()
    label_levels: Optional[Tuple[str, str]] = None

    def __post_init__(self):
        X = np.asarray(self.X, dtype=float)
        if X.ndim != 2:
            raise InvalidInput(f"X 必须是 d×n 矩阵，实际维度 {X.ndim}")
        if not np.all(np.isfinite(X)):
            raise InvalidInput("X 含非有限值")
        groups = np.asarray(self.groups)
        if groups.ndim == 1:
            groups = groups.reshape(1, -1)
        groups = groups.astype(int)
        d, n = X.shape
        if n < 2:
            raise DegenerateInput(f"样本数 n={n} < 2")
        if groups.shape[1] != n:
            raise DimensionError(f"groups 长度 {groups.shape[1]} 与样本数 {n} 不一致")
        if np.any(groups < 0):
            raise InvalidInput("组编码必须为非负整数")
        labels = self.labels
        if labels is not None:
            labels = np.asarray(labels).astype(int).reshape(-1)
            if labels.shape[0] != n:
                raise DimensionError(f"labels 长度 {labels.shape[0]} 与样本数 {n} 不一致")
            if not np.all(np.isin(labels, (0, 1))):
                raise InvalidInput("labels 必须取值于 {0, 1}")

        object.__setattr__(self, "X", X)
        object.__setattr__(self, "groups", groups)
        object.__setattr__(self, "labels", labels)
        if not self.feature_names:
            object.__setattr__(self, "feature_names", tuple(f"x{i}" for i in range(d)))
        if not self.group_names:
            object.__setattr__(self, "group_names", tuple(f"group{r}" for r in range(groups.shape[0])))

        for r in range(groups.shape[0]):
            if np.unique(groups[r]).size < 2:
                logger.warning(f"⚠️ 敏感属性 {self.group_names[r]} 只有一个取值，拟合时约束无意义")

    @property
    def d(self) -> int:
        return self.X.shape[0]

    @property
    def n(self) -> int:
        return self.X.shape[1]

    @property
    def n_attributes(self) -> int:
        return self.groups.shape[0]

    def group_count(self, attribute: int) -> int:
        return int(self.groups[attribute].max()) + 1

    def subset(self, index: Sequence[int]) -> "Dataset":
        """按列下标取子集（保持元数据）"""
        index = np.asarray(index)
        return Dataset(
            X=self.X[:, index],
            groups=self.groups[:, index],
            labels=None if self.labels is None else self.labels[index],
            feature_names=self.feature_names,
            group_names=self.group_names,
            label_name=self.label_name,
            group_levels=self.group_levels,
            label_levels=self.label_levels,
        )

    def with_X(self, X: np.ndarray) -> "Dataset":
        """替换特征矩阵（标准化后使用）"""
        return Dataset(
            X=X,
            groups=self.groups,
            labels=self.labels,
            feature_names=self.feature_names,
            group_names=self.group_names,
            label_name=self.label_name,
            group_levels=self.group_levels,
            label_levels=self.label_levels,
        )


def resolve_attributes(data: Dataset, attributes: Optional[Sequence[int]]) -> List[int]:
    """None 表示全部属性"""
    if attributes is None:
        return list(range(data.n_attributes))
    resolved = []
    for attribute in attributes:
        if not 0 <= attribute < data.n_attributes:
            raise DimensionError(f"属性下标 {attribute} 超出范围 [0, {data.n_attributes - 1}]")
        resolved.append(int(attribute))
    return resolved

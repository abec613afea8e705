"""
按训练集统计量标准化
"""

import logging
from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np

from errors import DimensionError
from fair_core.dataset import Dataset

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Scaler:
    """(x − μ)/σ；σ=0 的特征映射为 0"""
    mean: np.ndarray
    scale: np.ndarray
    constant: np.ndarray

    def transform_matrix(self, X: np.ndarray) -> np.ndarray:
        if X.shape[0] != self.mean.shape[0]:
            raise DimensionError(f"特征数 {X.shape[0]} 与标准化器维数 {self.mean.shape[0]} 不一致")
        Z = (X - self.mean[:, None]) / self.scale[:, None]
        Z[self.constant, :] = 0.0
        return Z

    def apply(self, data: Dataset) -> Dataset:
        return data.with_X(self.transform_matrix(data.X))


def fit_scaler(train: Dataset) -> Scaler:
    mean = train.X.mean(axis=1)
    std = train.X.std(axis=1)
    constant = std == 0
    if np.any(constant):
        names = [train.feature_names[i] for i in np.flatnonzero(constant)]
        logger.warning(f"⚠️ 常数特征标准化为0: {names}")
    return Scaler(mean=mean, scale=np.where(constant, 1.0, std), constant=constant)


def standardize(train: Dataset, others: Sequence[Dataset]) -> Tuple[List[Dataset], Scaler]:
    """用训练集的 μ/σ 变换 others 中的每个数据集"""
    scaler = fit_scaler(train)
    return [scaler.apply(data) for data in others], scaler

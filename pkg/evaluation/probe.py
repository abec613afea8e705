"""
探针：用分类器从嵌入中预测敏感属性
线性不可分度 = 线性探针的测试错误率（越高越公平）
"""

import logging

import numpy as np

from config.settings import Config
from errors import DimensionError
from evaluation.logreg import LinearClassifier, train_logreg

logger = logging.getLogger(__name__)


def train_probe(embedding, groups, reg_strength: float = None) -> LinearClassifier:
    """在训练嵌入上训练组别探针"""
    reg_strength = Config.PROBE_REG if reg_strength is None else reg_strength
    return train_logreg(embedding, groups, reg_strength)


def linear_inseparability(embedding, groups, trained_probe: LinearClassifier) -> float:
    """探针在（与训练集不相交的）测试嵌入上的错误率"""
    embedding = np.asarray(embedding, dtype=float)
    groups = np.asarray(groups).astype(int).reshape(-1)
    if embedding.ndim != 2 or embedding.shape[1] != groups.shape[0]:
        raise DimensionError("嵌入列数与 groups 长度不一致")
    return 1.0 - trained_probe.accuracy(embedding, groups)


def quadratic_features(embedding) -> np.ndarray:
    """线性项 + 全部二次单项式 eᵢeⱼ (i ≤ j)"""
    E = np.asarray(embedding, dtype=float)
    k = E.shape[0]
    rows, cols = np.triu_indices(k)
    return np.vstack([E, E[rows] * E[cols]])


def quadratic_inseparability(train_embedding, train_groups, test_embedding, test_groups,
                             reg_strength: float = None) -> float:
    """二次特征上的逻辑回归探针错误率（非线性探针）"""
    probe = train_probe(quadratic_features(train_embedding), train_groups, reg_strength)
    return linear_inseparability(quadratic_features(test_embedding), test_groups, probe)

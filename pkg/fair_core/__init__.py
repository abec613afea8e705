"""
fair_core 顶级模块
功能：约束矩阵 + 标准/公平/Fair PCA-S 拟合 + 权衡表示 + 模型持久化
"""

from .dataset import Dataset, resolve_attributes
from .constraint import ConstraintMatrix, build_constraint_matrix
from .pca import (
    ProjectionModel,
    fit_standard_pca,
    fit_fair_pca,
    fit_fair_pca_s,
    fair_s_dimension,
    group_covariances,
    transform,
)
from .tradeoff import TradeoffModel, tradeoff_transform
from .model_io import dumps_model, loads_model, save_model, load_model

__all__ = [
    # 数据模型
    'Dataset',
    'ConstraintMatrix',
    'ProjectionModel',
    'TradeoffModel',

    # 拟合
    'build_constraint_matrix',
    'fit_standard_pca',
    'fit_fair_pca',
    'fit_fair_pca_s',
    'fair_s_dimension',
    'group_covariances',
    'resolve_attributes',

    # 变换
    'transform',
    'tradeoff_transform',

    # 持久化
    'dumps_model',
    'loads_model',
    'save_model',
    'load_model',
]

__version__ = "1.0.0"

import logging
logging.getLogger(__name__).addHandler(logging.NullHandler())

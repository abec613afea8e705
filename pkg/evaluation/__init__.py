"""
evaluation 顶级模块
功能：解释方差 + MMD² + 探针 + 下游逻辑回归 + DP/EO差距 + 报告
"""

from .metrics import explained_variance, mmd2, median_heuristic_gamma, fairness_gaps, covariance_gap
from .logreg import LinearClassifier, LogisticObjective, train_logreg
from .probe import train_probe, linear_inseparability, quadratic_features, quadratic_inseparability
from .report import (
    EvalReport,
    REPORT_COLUMNS,
    evaluate,
    summarize,
    reports_frame,
    write_reports,
)

__all__ = [
    'explained_variance',
    'mmd2',
    'median_heuristic_gamma',
    'fairness_gaps',
    'covariance_gap',
    'LinearClassifier',
    'LogisticObjective',
    'train_logreg',
    'train_probe',
    'linear_inseparability',
    'quadratic_features',
    'quadratic_inseparability',
    'EvalReport',
    'REPORT_COLUMNS',
    'evaluate',
    'summarize',
    'reports_frame',
    'write_reports',
]

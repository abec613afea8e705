"""
data 顶级模块
功能：CSV读取/写出 + 标准化 + 分层切分 + 两高斯混合合成数据
"""

from .loader import ColumnSpec, load_csv, write_csv, dataset_frame, column_spec_for
from .scaler import Scaler, fit_scaler, standardize
from .splitting import split
from .synth import MixtureSpec, gen_mixture, PRESETS, LABEL_MODES

__all__ = [
    'ColumnSpec',
    'load_csv',
    'write_csv',
    'dataset_frame',
    'column_spec_for',
    'Scaler',
    'fit_scaler',
    'standardize',
    'split',
    'MixtureSpec',
    'gen_mixture',
    'PRESETS',
    'LABEL_MODES',
]

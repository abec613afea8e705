"""
linalg 顶级模块
功能：对称特征分解 + SVD零空间 + 广义对称特征分解（带抖动）
"""

from .eigen import EigResult, sym_eig_topk, gen_sym_eig_topk, canonical_signs, as_matrix
from .nullspace import nullspace_basis

__all__ = [
    'EigResult',
    'sym_eig_topk',
    'gen_sym_eig_topk',
    'nullspace_basis',
    'canonical_signs',
    'as_matrix',
]

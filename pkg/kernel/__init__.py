"""
kernel 顶级模块
功能：核函数 + 公平核PCA
"""

from .kernels import KernelSpec, gram, auto_gamma, KERNEL_KINDS
from .fair_kernel import KernelModel, fit_fair_kernel_pca, kernel_transform

__all__ = [
    'KernelSpec',
    'gram',
    'auto_gamma',
    'KERNEL_KINDS',
    'KernelModel',
    'fit_fair_kernel_pca',
    'kernel_transform',
]

"""
SVD零空间
"""

import logging

import numpy as np
from scipy import linalg as sla

from config.settings import Config
from linalg.eigen import as_matrix, canonical_signs
from errors import InvalidInput

logger = logging.getLogger(__name__)


def nullspace_basis(M, rel_tol: float = None) -> np.ndarray:
    """
    {v : Mv = 0} 的正交归一基（d×s）
    取奇异值 σᵢ ≤ rel_tol·σ_max 的右奇异向量；σ_max = 0 时返回全部向量
    """
    if rel_tol is None:
        rel_tol = Config.NULLSPACE_RTOL
    if rel_tol <= 0:
        raise InvalidInput(f"rel_tol 必须 > 0，实际 {rel_tol}")
    M = as_matrix(M, "M")
    if M.size == 0:
        raise InvalidInput("M 不能为空矩阵")

    d = M.shape[1]
    _, sigma, Vh = sla.svd(M, full_matrices=True)
    sigma_max = float(sigma.max()) if sigma.size else 0.0
    rank = int(np.sum(sigma > rel_tol * sigma_max)) if sigma_max > 0 else 0

    logger.debug(f"零空间: M {M.shape}, σ_max={sigma_max:.3e}, 数值秩={rank}, s={d - rank}")
    return canonical_signs(Vh[rank:].T)

"""
对称特征分解 + 广义对称特征分解
确定性约定：特征值降序；每个特征向量绝对值最大的分量非负（并列取最小下标）
"""

import logging
from dataclasses import dataclass

import numpy as np
from scipy import linalg as sla

from config.settings import Config
from errors import DimensionError, InvalidInput, NumericalError

logger = logging.getLogger(__name__)

SYMMETRY_TOL = 1e-8


@dataclass(frozen=True)
class EigResult:
    """特征对：values 降序，vectors 的列为对应特征向量"""
    values: np.ndarray
    vectors: np.ndarray

    @property
    def k(self) -> int:
        return self.values.shape[0]


def as_matrix(A, name: str = "A") -> np.ndarray:
    """转成二维float数组并检查有限性"""
    M = np.asarray(A, dtype=float)
    if M.ndim != 2:
        raise InvalidInput(f"{name} 必须是二维矩阵，实际维度 {M.ndim}")
    if not np.all(np.isfinite(M)):
        raise InvalidInput(f"{name} 含非有限值")
    return M


def canonical_signs(V: np.ndarray) -> np.ndarray:
    """翻转列符号，使每列绝对值最大的分量非负（并列取最小下标）"""
    V = np.array(V, dtype=float, copy=True)
    if V.size == 0:
        return V
    pivots = np.argmax(np.abs(V), axis=0)
    signs = np.where(V[pivots, np.arange(V.shape[1])] < 0, -1.0, 1.0)
    return V * signs


def _square_symmetric(A, name: str) -> np.ndarray:
    M = as_matrix(A, name)
    if M.shape[0] != M.shape[1]:
        raise DimensionError(f"{name} 必须是方阵，实际 {M.shape}")
    scale = max(1.0, float(np.abs(M).max())) if M.size else 1.0
    if M.size and np.abs(M - M.T).max() > SYMMETRY_TOL * scale:
        logger.warning(f"⚠️ {name} 非对称（偏差 {np.abs(M - M.T).max():.2e}），按 (A+Aᵀ)/2 处理")
    return (M + M.T) / 2.0


def _check_k(k: int, p: int):
    if k < 1 or k > p:
        raise DimensionError(f"k={k} 超出范围 [1, {p}]", achievable_max=p)


def _top_k(values: np.ndarray, vectors: np.ndarray, k: int) -> EigResult:
    # 稳定排序：特征值并列时保持求解器给出的顺序
    order = np.argsort(-values, kind="stable")[:k]
    return EigResult(values=values[order].copy(), vectors=canonical_signs(vectors[:, order]))


def sym_eig_topk(A, k: int) -> EigResult:
    """对称矩阵前k大特征对"""
    M = _square_symmetric(A, "A")
    _check_k(k, M.shape[0])
    values, vectors = sla.eigh(M)
    return _top_k(values, vectors, k)


def gen_sym_eig_topk(A, B, k: int, jitter: float = None) -> EigResult:
    """
    广义对称特征问题 A v = λ (B + jitter·I) v 的前k大特征对
    对 B + jitter·I 做Cholesky，化为标准对称问题；返回的向量满足 (B+jitter·I)-正交归一
    """
    if jitter is None:
        jitter = Config.KERNEL_JITTER
    if jitter < 0:
        raise InvalidInput(f"jitter 必须 ≥ 0，实际 {jitter}")
    A = _square_symmetric(A, "A")
    B = _square_symmetric(B, "B")
    if A.shape != B.shape:
        raise DimensionError(f"A {A.shape} 与 B {B.shape} 形状不一致")
    p = A.shape[0]
    _check_k(k, p)

    B_reg = B + jitter * np.eye(p)
    try:
        L = sla.cholesky(B_reg, lower=True)
    except sla.LinAlgError as e:
        raise NumericalError(f"B + {jitter:g}·I 不是正定矩阵: {e}") from e

    # C = L⁻¹ A L⁻ᵀ
    tmp = sla.solve_triangular(L, A, lower=True)
    C = sla.solve_triangular(L, tmp.T, lower=True)
    C = (C + C.T) / 2.0

    values, Y = sla.eigh(C)
    order = np.argsort(-values, kind="stable")[:k]
    V = sla.solve_triangular(L.T, Y[:, order], lower=False)
    return EigResult(values=values[order].copy(), vectors=canonical_signs(V))

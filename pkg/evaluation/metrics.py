"""
表示的效用与公平指标
解释方差、组间 MMD²、DP/EO 差距、组协方差差距
"""

import logging
from typing import Optional, Tuple

import numpy as np
from scipy.spatial.distance import cdist, pdist

from config.settings import Config
from errors import DegenerateInput, DimensionError, InvalidSpec
from fair_core.pca import group_covariances
from kernel.kernels import KernelSpec

logger = logging.getLogger(__name__)


def explained_variance(U, X) -> float:
    """trace(UᵀXXᵀU) / trace(XXᵀ)"""
    U = np.asarray(U, dtype=float)
    X = np.asarray(X, dtype=float)
    if U.shape[0] != X.shape[0]:
        raise DimensionError(f"U 行数 {U.shape[0]} 与 X 行数 {X.shape[0]} 不一致")
    total = float(np.sum(X * X))
    if total <= 0:
        raise DegenerateInput("trace(XXᵀ) = 0，数据矩阵为零")
    projected = U.T @ X
    return float(np.sum(projected * projected)) / total


def median_heuristic_gamma(points: np.ndarray) -> float:
    """γ = 1/(2·median²)，points 为 n×k；点太多时等间隔抽样"""
    n = points.shape[0]
    limit = Config.MMD_MEDIAN_MAX_POINTS
    if n > limit:
        points = points[np.linspace(0, n - 1, limit).astype(int)]
    distances = pdist(points)
    median = float(np.median(distances)) if distances.size else 0.0
    if median <= 0:
        logger.warning("⚠️ 成对距离中位数为0，gamma 取 1.0")
        return 1.0
    return 1.0 / (2.0 * median ** 2)


def _kernel_sum(P: np.ndarray, Q: np.ndarray, gamma: float) -> float:
    """Σᵢⱼ exp(−γ‖pᵢ−qⱼ‖²)，按块计算控制内存"""
    chunk = Config.MMD_CHUNK
    total = 0.0
    for start in range(0, P.shape[0], chunk):
        block = cdist(P[start:start + chunk], Q, "sqeuclidean")
        total += float(np.exp(-gamma * block).sum())
    return total


def _order_key(M: np.ndarray):
    return (M.shape[1], M.tobytes())


def mmd2(A, B, spec: Optional[KernelSpec] = None, biased: bool = False) -> float:
    """
    两组嵌入（k×n₀, k×n₁）之间的高斯核 MMD²
    默认无偏U统计量 + 中位数启发式带宽；spec 给定时用其 gamma（None 则 1/(k·Var)）
    """
    A = np.asarray(A, dtype=float)
    B = np.asarray(B, dtype=float)
    if A.ndim != 2 or B.ndim != 2 or A.shape[0] != B.shape[0]:
        raise DimensionError("两组嵌入维数不一致")
    if A.shape[1] < 2 or B.shape[1] < 2:
        raise DegenerateInput(f"每组至少需要2个点，实际 {A.shape[1]} / {B.shape[1]}")

    # 固定计算顺序，保证 mmd2(A,B) 与 mmd2(B,A) 逐位相同
    if _order_key(B) < _order_key(A):
        A, B = B, A

    P, Q = A.T, B.T
    pooled = np.vstack([P, Q])
    if spec is None:
        gamma = median_heuristic_gamma(pooled)
    elif spec.kind != "gaussian":
        raise InvalidSpec(f"MMD² 只支持高斯核，实际 {spec.kind}")
    else:
        gamma = spec.resolve(pooled.T).gamma

    n0, n1 = P.shape[0], Q.shape[0]
    s_pp = _kernel_sum(P, P, gamma)
    s_qq = _kernel_sum(Q, Q, gamma)
    s_pq = _kernel_sum(P, Q, gamma)
    if biased:
        return s_pp / n0 ** 2 + s_qq / n1 ** 2 - 2.0 * s_pq / (n0 * n1)
    # 对角元恰为 exp(0) = 1
    return (s_pp - n0) / (n0 * (n0 - 1)) + (s_qq - n1) / (n1 * (n1 - 1)) - 2.0 * s_pq / (n0 * n1)


def _rate(predictions: np.ndarray, mask: np.ndarray, cell: str) -> Optional[float]:
    if not np.any(mask):
        logger.warning(f"⚠️ 条件单元为空: {cell}，该指标缺省")
        return None
    return float(predictions[mask].mean())


def fairness_gaps(predictions, groups, labels=None) -> Tuple[Optional[float], Optional[float]]:
    """
    Δ_DP = |P(Ŷ=1|Z=0) − P(Ŷ=1|Z=1)|
    Δ_EO = |P(Ŷ=1|Z=0,Y=1) − P(Ŷ=1|Z=1,Y=1)|（无标签时缺省）
    """
    predictions = np.asarray(predictions).astype(int).reshape(-1)
    groups = np.asarray(groups).astype(int).reshape(-1)
    if predictions.shape != groups.shape:
        raise DimensionError("predictions 与 groups 长度不一致")

    delta_dp = None
    r0 = _rate(predictions, groups == 0, "Z=0")
    r1 = _rate(predictions, groups == 1, "Z=1")
    if r0 is not None and r1 is not None:
        delta_dp = abs(r0 - r1)

    delta_eo = None
    if labels is not None:
        labels = np.asarray(labels).astype(int).reshape(-1)
        if labels.shape != groups.shape:
            raise DimensionError("labels 与 groups 长度不一致")
        e0 = _rate(predictions, (groups == 0) & (labels == 1), "Z=0,Y=1")
        e1 = _rate(predictions, (groups == 1) & (labels == 1), "Z=1,Y=1")
        if e0 is not None and e1 is not None:
            delta_eo = abs(e0 - e1)
    return delta_dp, delta_eo


def covariance_gap(U, X, codes) -> float:
    """‖Uᵀ(Σ̂₀−Σ̂₁)U‖_max，Fair PCA-S 要减小的量"""
    U = np.asarray(U, dtype=float)
    sigma0, sigma1 = group_covariances(np.asarray(X, dtype=float), np.asarray(codes).astype(int))
    return float(np.abs(U.T @ (sigma0 - sigma1) @ U).max())

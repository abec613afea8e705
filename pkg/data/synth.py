"""
两高斯混合合成数据
随机数：numpy Generator + PCG64（给定种子跨平台可复现），x = μ + L·ε，L 为协方差Cholesky因子
"""

import logging
from dataclasses import dataclass, field
from typing import Optional, Union

import numpy as np
from scipy import linalg as sla

from config.settings import Config
from errors import InvalidSpec
from fair_core.dataset import Dataset

logger = logging.getLogger(__name__)

LABEL_MODES = ("none", "group", "linear")
PRESETS = ("prop1", "fig1", "tradeoff")

Covariance = Union[float, np.ndarray]


@dataclass(frozen=True)
class MixtureSpec:
    """每组 n_per_group 个样本；cov 可为标量（标量·I）或 d×d 矩阵"""
    d: int
    n_per_group: int
    mean0: np.ndarray
    mean1: np.ndarray
    cov0: Covariance = 1.0
    cov1: Covariance = 1.0
    seed: int = 0
    label_mode: str = "none"
    label_weights: Optional[np.ndarray] = None

    def __post_init__(self):
        if self.d < 1 or self.n_per_group < 1:
            raise InvalidSpec(f"d 与 n_per_group 必须 ≥ 1，实际 d={self.d}, n={self.n_per_group}")
        for name in ("mean0", "mean1"):
            mean = np.asarray(getattr(self, name), dtype=float).reshape(-1)
            if mean.shape[0] != self.d:
                raise InvalidSpec(f"{name} 长度 {mean.shape[0]} ≠ d={self.d}")
            object.__setattr__(self, name, mean)
        if self.label_mode not in LABEL_MODES:
            raise InvalidSpec(f"未知 label_mode: {self.label_mode}，可选 {LABEL_MODES}")
        if self.label_weights is not None:
            weights = np.asarray(self.label_weights, dtype=float).reshape(-1)
            if weights.shape[0] != self.d:
                raise InvalidSpec(f"label_weights 长度 {weights.shape[0]} ≠ d={self.d}")
            object.__setattr__(self, "label_weights", weights)

    def covariance(self, group: int) -> np.ndarray:
        cov = self.cov0 if group == 0 else self.cov1
        if np.isscalar(cov):
            return float(cov) * np.eye(self.d)
        cov = np.asarray(cov, dtype=float)
        if cov.shape != (self.d, self.d):
            raise InvalidSpec(f"cov{group} 形状 {cov.shape} ≠ ({self.d}, {self.d})")
        if not np.allclose(cov, cov.T):
            raise InvalidSpec(f"cov{group} 不对称")
        return cov

    @classmethod
    def preset(cls, name: str, d: int = 10, n_per_group: int = 1000, seed: int = 0,
               separation: float = 4.0) -> "MixtureSpec":
        """
        prop1: 同协方差 I，均值沿 e₀ 相差 separation
        fig1: 均值几乎相同，前两维方差在两组间互换（25 vs 1）
        tradeoff: 同协方差（e₁ 方差2），均值沿 e₀ 相差 separation，标签 = [x₀ + x₁ > 阈值]
        """
        if name == "prop1":
            mean1 = np.zeros(d)
            mean1[0] = separation
            return cls(d=d, n_per_group=n_per_group, mean0=np.zeros(d), mean1=mean1, seed=seed)
        if name == "fig1":
            if d < 4:
                raise InvalidSpec("fig1 预设需要 d ≥ 4")
            var0 = np.ones(d)
            var1 = np.ones(d)
            var0[0], var1[0] = 25.0, 1.0
            var0[1], var1[1] = 1.0, 25.0
            var0[2:d // 2 + 1] = var1[2:d // 2 + 1] = 4.0
            mean1 = np.zeros(d)
            mean1[-1] = 2.0
            return cls(d=d, n_per_group=n_per_group, mean0=np.zeros(d), mean1=mean1,
                       cov0=np.diag(var0), cov1=np.diag(var1), seed=seed)
        if name == "tradeoff":
            if d < 2:
                raise InvalidSpec("tradeoff 预设需要 d ≥ 2")
            variances = np.ones(d)
            variances[1] = 2.0
            mean1 = np.zeros(d)
            mean1[0] = separation
            weights = np.zeros(d)
            weights[0] = weights[1] = 1.0
            return cls(d=d, n_per_group=n_per_group, mean0=np.zeros(d), mean1=mean1,
                       cov0=np.diag(variances), cov1=np.diag(variances), seed=seed,
                       label_mode="linear", label_weights=weights)
        raise InvalidSpec(f"未知预设: {name}，可选 {PRESETS}")


def _cholesky(cov: np.ndarray, group: int) -> np.ndarray:
    try:
        return sla.cholesky(cov + Config.COV_JITTER * np.eye(cov.shape[0]), lower=True)
    except sla.LinAlgError as e:
        raise InvalidSpec(f"cov{group} 不是半正定矩阵: {e}") from e


def gen_mixture(spec: MixtureSpec) -> Dataset:
    """组0样本在前、组1样本在后；同一种子输出完全相同"""
    rng = np.random.default_rng(spec.seed)
    blocks = []
    for group, mean in ((0, spec.mean0), (1, spec.mean1)):
        L = _cholesky(spec.covariance(group), group)
        noise = rng.standard_normal((spec.d, spec.n_per_group))
        blocks.append(mean[:, None] + L @ noise)
    X = np.hstack(blocks)
    groups = np.repeat([0, 1], spec.n_per_group)

    labels = None
    if spec.label_mode == "group":
        labels = groups.copy()
    elif spec.label_mode == "linear":
        weights = spec.label_weights
        if weights is None:
            weights = rng.standard_normal(spec.d)
        midpoint = (spec.mean0 + spec.mean1) / 2.0
        labels = ((weights @ (X - midpoint[:, None])) > 0).astype(int)

    logger.info(f"✅ 合成数据: d={spec.d}, 每组 {spec.n_per_group}, 种子 {spec.seed}, 标签 {spec.label_mode}")
    return Dataset(
        X=X,
        groups=groups,
        labels=labels,
        group_names=("group",),
        label_name="label" if labels is not None else None,
        group_levels=(("0", "1"),),
        label_levels=("0", "1") if labels is not None else None,
    )

"""
约束矩阵 Z：中心化的组指示列
容许投影位于 ZᵀXᵀ 的零空间
"""

import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from errors import DegenerateAttribute
from fair_core.dataset import Dataset, resolve_attributes

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ConstraintMatrix:
    """Z: n×c；columns 记录每列来自 (属性, 组)"""
    Z: np.ndarray
    columns: Tuple[Tuple[int, int], ...]

    @property
    def c(self) -> int:
        return self.Z.shape[1]

    @property
    def is_empty(self) -> bool:
        return self.Z.shape[1] == 0


def build_constraint_matrix(data: Dataset,
                            attributes: Optional[Sequence[int]] = None,
                            collapse_binary: bool = True,
                            drop_degenerate: bool = False) -> ConstraintMatrix:
    """
    每个属性每个组一列 (z_i − z̄)；二值属性默认只保留一列（两列只差一个符号）
    单一取值的属性：drop_degenerate=False 时抛 DegenerateAttribute，否则告警并跳过
    """
    blocks: List[np.ndarray] = []
    columns: List[Tuple[int, int]] = []

    for attribute in resolve_attributes(data, attributes):
        codes = data.groups[attribute]
        present = np.unique(codes)
        if present.size < 2:
            name = data.group_names[attribute]
            if not drop_degenerate:
                raise DegenerateAttribute(name)
            logger.warning(f"⚠️ 敏感属性 {name} 只有一个取值，已跳过该约束")
            continue

        if present.size == 2 and collapse_binary:
            present = present[1:]
        for group in present:
            indicator = (codes == group).astype(float)
            blocks.append((indicator - indicator.mean()).reshape(-1, 1))
            columns.append((attribute, int(group)))

    Z = np.hstack(blocks) if blocks else np.zeros((data.n, 0))
    logger.debug(f"约束矩阵: n={data.n}, c={Z.shape[1]}")
    return ConstraintMatrix(Z=Z, columns=tuple(columns))

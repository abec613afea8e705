"""
带种子的训练/测试切分（按组分层）
测试集大小 = round(n·fraction)（四舍五入，.5 向上）
"""

import logging
import math
from typing import Dict, Tuple

import numpy as np

from errors import InvalidInput
from fair_core.dataset import Dataset

logger = logging.getLogger(__name__)


def _test_size(n: int, fraction: float) -> int:
    return min(max(int(math.floor(n * fraction + 0.5)), 1), n - 1)


def _allocate(sizes: Dict, total: int) -> Dict:
    """最大余数法把 total 分到各层，每层两侧至少各1个"""
    n = sum(sizes.values())
    quotas = {key: size * total / n for key, size in sizes.items()}
    counts = {key: min(max(int(math.floor(q)), 1), sizes[key] - 1) for key, q in quotas.items()}
    by_remainder = sorted(sizes, key=lambda key: (-(quotas[key] - math.floor(quotas[key])), key))
    diff = total - sum(counts.values())
    while diff != 0:
        moved = False
        for key in (by_remainder if diff > 0 else reversed(by_remainder)):
            if diff > 0 and counts[key] < sizes[key] - 1:
                counts[key] += 1
                diff -= 1
                moved = True
            elif diff < 0 and counts[key] > 1:
                counts[key] -= 1
                diff += 1
                moved = True
            if diff == 0:
                break
        if not moved:
            break
    return counts


def split(data: Dataset, test_fraction: float = 0.3, seed: int = 0) -> Tuple[Dataset, Dataset]:
    """先按种子打乱再划分；各组（全部属性的联合取值）在两侧都出现"""
    if not 0 < test_fraction < 1:
        raise InvalidInput(f"test_fraction 必须在 (0, 1) 内，实际 {test_fraction}")
    rng = np.random.default_rng(seed)
    order = rng.permutation(data.n)
    total = _test_size(data.n, test_fraction)

    strata: Dict[Tuple[int, ...], list] = {}
    for index in order:
        strata.setdefault(tuple(data.groups[:, index]), []).append(index)

    sizes = {key: len(members) for key, members in strata.items()}
    feasible = all(size >= 2 for size in sizes.values()) and len(sizes) <= min(total, data.n - total)
    if feasible:
        counts = _allocate(sizes, total)
        feasible = sum(counts.values()) == total
    if feasible:
        test_index = [i for key, members in strata.items() for i in members[:counts[key]]]
    else:
        logger.warning("⚠️ 组太小无法分层，退化为不分层切分")
        test_index = list(order[:total])

    test_mask = np.zeros(data.n, dtype=bool)
    test_mask[test_index] = True
    return data.subset(np.flatnonzero(~test_mask)), data.subset(np.flatnonzero(test_mask))

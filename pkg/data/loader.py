"""
CSV 读取/写出
方言：逗号分隔，必须有表头，UTF-8，小数点，数值不加引号
"""

import logging
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from errors import ParseError, SchemaError
from fair_core.dataset import Dataset

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ColumnSpec:
    """
    features=None 表示除组/标签外的全部列
    categorical 列做完整one-hot（不丢参考类别）
    """
    groups: Tuple[str, ...]
    label: Optional[str] = None
    features: Optional[Tuple[str, ...]] = None
    categorical: Tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "groups", tuple(self.groups))
        object.__setattr__(self, "categorical", tuple(self.categorical))
        if self.features is not None:
            object.__setattr__(self, "features", tuple(self.features))
        if not self.groups:
            raise SchemaError("至少需要一个组列")
        roles = list(self.groups) + ([self.label] if self.label else [])
        if len(set(roles)) != len(roles):
            raise SchemaError("组列与标签列必须互不相同")
        overlap = set(roles) & set(self.features or ())
        if overlap:
            raise SchemaError(f"列不能同时作为特征和组/标签: {sorted(overlap)}")
        stray = set(self.categorical) - set(self.features or self.categorical)
        if stray:
            raise SchemaError(f"分类列必须是特征列: {sorted(stray)}")

    def feature_columns(self, header: Sequence[str]) -> List[str]:
        if self.features is not None:
            return list(self.features)
        roles = set(self.groups) | ({self.label} if self.label else set())
        return [name for name in header if name not in roles]


def _check_missing(frame: pd.DataFrame, columns: Sequence[str]):
    for column in columns:
        empty = frame[column].str.strip() == ""
        if empty.any():
            row = int(np.flatnonzero(empty.to_numpy())[0]) + 2
            raise ParseError("缺失值（不做插补）", row=row, column=column)


def _numeric(frame: pd.DataFrame, column: str) -> np.ndarray:
    """逐格用 float() 解析，保证 %.17g 写出的值能精确读回"""
    cells = frame[column].str.strip().tolist()
    result = np.empty(len(cells))
    for i, text in enumerate(cells):
        try:
            result[i] = float(text)
        except ValueError:
            raise ParseError(f"无法解析为数值: {text!r}", row=i + 2, column=column) from None
    if not np.all(np.isfinite(result)):
        row = int(np.flatnonzero(~np.isfinite(result))[0]) + 2
        raise ParseError("非有限数值", row=row, column=column)
    return result


def _level_sort_key(value: str):
    """数值型取值按数值排序，其余按字符串"""
    try:
        return (0, float(value), value)
    except ValueError:
        return (1, 0.0, value)


def _encode(values: pd.Series) -> Tuple[np.ndarray, Tuple[str, ...]]:
    stripped = values.str.strip()
    levels = tuple(sorted(stripped.unique(), key=_level_sort_key))
    lookup = {level: code for code, level in enumerate(levels)}
    return stripped.map(lookup).to_numpy(dtype=int), levels


def load_csv(path: str, spec: ColumnSpec) -> Dataset:
    """读取CSV：数值解析 + 分类特征one-hot + 组/标签编码，保持行顺序"""
    try:
        frame = pd.read_csv(path, dtype=str, keep_default_na=False, encoding="utf-8")
    except FileNotFoundError as e:
        raise SchemaError(f"文件不存在: {path}") from e
    except pd.errors.EmptyDataError as e:
        raise SchemaError(f"文件为空或缺少表头: {path}") from e

    header = list(frame.columns)
    features = spec.feature_columns(header)
    needed = list(spec.groups) + ([spec.label] if spec.label else []) + features
    missing = [name for name in needed if name not in header]
    if missing:
        raise SchemaError(f"缺少列: {missing}")
    if not features:
        raise SchemaError("没有特征列")
    _check_missing(frame, needed)

    rows, names = [], []
    for column in features:
        if column in spec.categorical:
            codes, levels = _encode(frame[column])
            for code, level in enumerate(levels):
                rows.append((codes == code).astype(float))
                names.append(f"{column}={level}")
        else:
            rows.append(_numeric(frame, column))
            names.append(column)

    group_rows, group_levels = [], []
    for column in spec.groups:
        codes, levels = _encode(frame[column])
        group_rows.append(codes)
        group_levels.append(levels)

    labels, label_levels = None, None
    if spec.label:
        labels, label_levels = _encode(frame[spec.label])
        if len(label_levels) > 2:
            raise ParseError(f"标签必须是二值，实际取值 {list(label_levels)}", column=spec.label)
        if len(label_levels) == 1:
            # 单一取值：按 0/1 本义编码
            level = label_levels[0]
            if level not in ("0", "1"):
                raise ParseError(f"标签只有一个取值 {level!r}，无法确定正类", column=spec.label)
            labels = np.full(len(frame), int(level))
            label_levels = ("0", "1")

    data = Dataset(
        X=np.vstack(rows),
        groups=np.vstack(group_rows),
        labels=labels,
        feature_names=tuple(names),
        group_names=tuple(spec.groups),
        label_name=spec.label,
        group_levels=tuple(group_levels),
        label_levels=tuple(label_levels) if label_levels else None,
    )
    logger.info(f"✅ 读取 {path}: n={data.n}, d={data.d}, 属性={len(spec.groups)}")
    return data


def dataset_frame(data: Dataset) -> pd.DataFrame:
    """Dataset → 行为样本的表（组/标签写回原始取值）"""
    columns = {name: data.X[i] for i, name in enumerate(data.feature_names)}
    for r, name in enumerate(data.group_names):
        levels = data.group_levels[r] if r < len(data.group_levels) else None
        codes = data.groups[r]
        columns[name] = [levels[c] for c in codes] if levels else codes
    if data.labels is not None:
        name = data.label_name or "label"
        levels = data.label_levels
        columns[name] = [levels[c] for c in data.labels] if levels else data.labels
    return pd.DataFrame(columns)


def write_csv(data: Dataset, path: str):
    """写出CSV，数值保留17位有效数字"""
    dataset_frame(data).to_csv(path, index=False, float_format="%.17g", encoding="utf-8")
    logger.info(f"✅ 数据已写出: {path} (n={data.n}, d={data.d})")


def column_spec_for(data: Dataset) -> ColumnSpec:
    """与 write_csv 输出对应的列规格"""
    label = (data.label_name or "label") if data.labels is not None else None
    return ColumnSpec(groups=data.group_names, label=label, features=data.feature_names)

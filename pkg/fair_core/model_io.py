"""
模型持久化 - 结构化文本格式
头部 key: value 行 + 矩阵块（行优先，17位有效数字），详见 README
"""

import json
import logging
from typing import Dict, List, Tuple

import numpy as np

from config.settings import Config
from errors import SchemaError
from fair_core.pca import ProjectionModel
from fair_core.tradeoff import TradeoffModel

logger = logging.getLogger(__name__)

MAGIC = "# fairpca model"


def _fmt(value: float) -> str:
    return "%.17g" % value


def _matrix_block(name: str, M: np.ndarray) -> List[str]:
    rows, cols = M.shape
    lines = [f"matrix {name} {rows} {cols}"]
    lines.extend(" ".join(_fmt(v) for v in row) for row in M)
    return lines


def _options_lines(options: Dict) -> List[str]:
    return [f"option.{key}: {json.dumps(value)}" for key, value in sorted(options.items())]


def dumps_model(model) -> str:
    """模型 → 文本"""
    from kernel.fair_kernel import KernelModel

    lines = [MAGIC, f"format_version: {Config.MODEL_FORMAT_VERSION}"]

    if isinstance(model, ProjectionModel):
        lines += [
            "model_type: projection",
            f"method: {model.method}",
            f"d: {model.d}",
            f"k: {model.k}",
            f"center: {json.dumps(model.center)}",
        ]
        if model.center:
            lines.append("mean: " + " ".join(_fmt(v) for v in model.mean))
        lines += _options_lines(model.fit_options)
        lines += _matrix_block("U", model.U)

    elif isinstance(model, KernelModel):
        lines += [
            "model_type: kernel",
            f"kernel_kind: {model.spec.kind}",
            f"gamma: {'null' if model.spec.gamma is None else _fmt(model.spec.gamma)}",
            f"jitter: {_fmt(model.jitter)}",
            f"d: {model.d}",
            f"k: {model.k}",
        ]
        lines += _options_lines(model.fit_options)
        lines += _matrix_block("Lambda", model.Lambda)
        lines += _matrix_block("R", model.R)
        lines += _matrix_block("train_X", model.train_X)

    elif isinstance(model, TradeoffModel):
        lines += ["model_type: tradeoff", f"lambda: {_fmt(model.lam)}"]
        for role, sub in (("fair", model.fair), ("standard", model.standard)):
            lines.append(f"submodel {role}")
            lines.extend(dumps_model(sub).rstrip("\n").split("\n"))
            lines.append(f"end submodel {role}")

    else:
        raise SchemaError(f"无法保存的模型类型: {type(model).__name__}")

    lines.append("end")
    return "\n".join(lines) + "\n"


def _parse(lines: List[str], start: int) -> Tuple[Dict, Dict, Dict, int]:
    """解析一个模型块，返回 (header, options, matrices, 下一行)"""
    if start >= len(lines) or lines[start].strip() != MAGIC:
        raise SchemaError("不是模型文件（缺少文件头）")
    header, options, matrices, submodels = {}, {}, {}, {}
    i = start + 1
    while i < len(lines):
        line = lines[i].strip()
        if not line:
            i += 1
            continue
        if line == "end":
            header["_submodels"] = submodels
            return header, options, matrices, i + 1
        if line.startswith("matrix "):
            try:
                _, name, rows, cols = line.split()
                rows, cols = int(rows), int(cols)
                values = [[float(v) for v in lines[i + 1 + r].split()] for r in range(rows)]
                M = np.array(values, dtype=float).reshape(rows, cols)
            except (ValueError, IndexError) as e:
                raise SchemaError(f"矩阵块损坏: {line} ({e})") from e
            matrices[name] = M
            i += 1 + rows
            continue
        if line.startswith("submodel "):
            role = line.split()[1]
            sub_header, sub_options, sub_matrices, i = _parse(lines, i + 1)
            submodels[role] = _build(sub_header, sub_options, sub_matrices)
            if i >= len(lines) or lines[i].strip() != f"end submodel {role}":
                raise SchemaError(f"子模型 {role} 未正确结束")
            i += 1
            continue
        key, sep, value = line.partition(":")
        if not sep:
            raise SchemaError(f"无法解析的行: {line}")
        key, value = key.strip(), value.strip()
        if key.startswith("option."):
            try:
                options[key[len("option."):]] = json.loads(value)
            except ValueError as e:
                raise SchemaError(f"选项无法解析: {line}") from e
        else:
            header[key] = value
        i += 1
    raise SchemaError("模型文件缺少 end 行")


def _require(header: Dict, key: str) -> str:
    if key not in header:
        raise SchemaError(f"模型文件缺少字段: {key}")
    return header[key]


def _matrix(matrices: Dict, name: str) -> np.ndarray:
    if name not in matrices:
        raise SchemaError(f"模型文件缺少矩阵: {name}")
    return matrices[name]


def _build(header: Dict, options: Dict, matrices: Dict):
    from kernel.fair_kernel import KernelModel
    from kernel.kernels import KernelSpec

    version = int(_require(header, "format_version"))
    if version != Config.MODEL_FORMAT_VERSION:
        raise SchemaError(f"不支持的模型格式版本: {version}")
    model_type = _require(header, "model_type")

    if model_type == "projection":
        center = json.loads(_require(header, "center"))
        mean = np.array([float(v) for v in _require(header, "mean").split()]) if center else None
        U = _matrix(matrices, "U")
        if U.shape != (int(_require(header, "d")), int(_require(header, "k"))):
            raise SchemaError(f"U 形状 {U.shape} 与头部 d/k 不一致")
        return ProjectionModel(U=U, method=_require(header, "method"), k=U.shape[1],
                               center=center, mean=mean, fit_options=options)

    if model_type == "kernel":
        gamma = _require(header, "gamma")
        spec = KernelSpec(kind=_require(header, "kernel_kind"),
                          gamma=None if gamma == "null" else float(gamma))
        return KernelModel(Lambda=_matrix(matrices, "Lambda"), R=_matrix(matrices, "R"),
                           train_X=_matrix(matrices, "train_X"),
                           spec=spec, k=int(_require(header, "k")),
                           jitter=float(_require(header, "jitter")), fit_options=options)

    if model_type == "tradeoff":
        submodels = header.get("_submodels", {})
        if "fair" not in submodels or "standard" not in submodels:
            raise SchemaError("权衡模型缺少 fair/standard 子模型")
        return TradeoffModel(fair=submodels["fair"], standard=submodels["standard"],
                             lam=float(_require(header, "lambda")))

    raise SchemaError(f"未知模型类型: {model_type}")


def loads_model(text: str):
    """文本 → 模型"""
    lines = text.split("\n")
    try:
        header, options, matrices, _ = _parse(lines, 0)
        return _build(header, options, matrices)
    except ValueError as e:
        raise SchemaError(f"模型文件字段无法解析: {e}") from e


def save_model(model, path: str):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_model(model))
    logger.info(f"✅ 模型已保存: {path}")


def load_model(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise SchemaError(f"无法读取模型文件 {path}: {e}") from e
    return loads_model(text)

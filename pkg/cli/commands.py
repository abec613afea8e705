"""
命令实现：fit / transform / eval / sweep / synth
结果（CSV、摘要行）写 stdout 或 -o 文件，日志走 stderr
"""

import dataclasses
import logging
import sys
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np
import pandas as pd

from cli.run_config import RunConfig
from errors import ConfigError, DimensionError, SchemaError
from evaluation import EvalReport, evaluate, explained_variance, reports_frame, summarize
from fair_core import (
    Dataset,
    ProjectionModel,
    TradeoffModel,
    fit_fair_pca,
    fit_fair_pca_s,
    fit_standard_pca,
    load_model,
    save_model,
)
from fair_core.pca import stats as core_stats
from data import ColumnSpec, MixtureSpec, dataset_frame, gen_mixture, load_csv, split, standardize
from kernel import KernelModel, KernelSpec, fit_fair_kernel_pca
from kernel.fair_kernel import stats as kernel_stats
from system_monitor import RunMonitor

logger = logging.getLogger("cli")

# 模型内部方法名 → CLI 方法名
_METHOD_NAMES = {"standard": "pca", "fair": "fair", "fair_s": "fair-s"}


def column_spec(config: RunConfig) -> ColumnSpec:
    return ColumnSpec(
        groups=config.groups,
        label=config.label,
        features=config.features,
        categorical=config.categorical,
    )


def fit_model(config: RunConfig, data: Dataset):
    """按 --method 分派；fair-s 作用于第一个敏感属性"""
    if config.method == "pca":
        return fit_standard_pca(data, config.k, center=config.center)
    if config.method == "fair":
        return fit_fair_pca(data, config.k, eo_mode=config.eo, center=config.center)
    if config.method == "fair-s":
        return fit_fair_pca_s(data, config.k, attribute=0, f=config.fair_s_fraction, center=config.center)
    spec = KernelSpec(kind=config.kernel_kind, gamma=config.gamma)
    return fit_fair_kernel_pca(data, config.k, spec=spec, jitter=config.jitter, eo_mode=config.eo)


def model_name(model) -> str:
    if isinstance(model, ProjectionModel):
        return _METHOD_NAMES[model.method]
    if isinstance(model, KernelModel):
        return "fair-kernel"
    return f"tradeoff-{model_name(model.fair)}"


def training_explained_variance(model, data: Dataset) -> Optional[float]:
    """只对正交投影有定义"""
    if not isinstance(model, ProjectionModel):
        return None
    X = data.X - model.mean[:, None] if model.center else data.X
    return explained_variance(model.U, X)


def _write_frame(frame: pd.DataFrame, path: Optional[str], float_format: str):
    if path:
        frame.to_csv(path, index=False, float_format=float_format, encoding="utf-8")
        logger.info(f"✅ 已写出: {path} ({len(frame)} 行)")
    else:
        frame.to_csv(sys.stdout, index=False, float_format=float_format)


def _prepare_split(config: RunConfig, data: Dataset, seed: int) -> Tuple[Dataset, Dataset]:
    train, test = split(data, test_fraction=config.test_fraction, seed=seed)
    if config.standardize:
        (train, test), _ = standardize(train, [train, test])
    return train, test


def _check_schema(model, data: Dataset):
    if model.d != data.d:
        raise SchemaError(f"模型维数 d={model.d} 与数据特征数 {data.d} 不一致")


def fit_counts() -> Dict[str, int]:
    """本进程内各方法的拟合次数"""
    counts = dict(core_stats)
    counts.update(kernel_stats)
    return counts


def _log_fit_counts(command: str):
    counts = fit_counts()
    logger.info(f"✅ {command}完成: 拟合 {sum(counts.values())} 次 {counts}")


# ==================== fit ====================

def cmd_fit(config: RunConfig) -> int:
    data = load_csv(config.data, column_spec(config))
    with RunMonitor(f"fit {config.method}"):
        model = fit_model(config, data)
    save_model(model, config.output)

    ev = training_explained_variance(model, data)
    ev_text = "NA" if ev is None else f"{ev:.6f}"
    print(f"method={config.method} k={model.k} explained_variance={ev_text}")
    return 0


# ==================== transform ====================

def cmd_transform(config: RunConfig) -> int:
    model = load_model(config.model)
    data = load_csv(config.data, column_spec(config))
    _check_schema(model, data)
    try:
        embedding = model.embed(data.X)
    except DimensionError as e:
        raise SchemaError(str(e)) from e

    frame = pd.DataFrame({f"e{i}": embedding[i] for i in range(embedding.shape[0])})
    passthrough = dataset_frame(data)
    extra = list(data.group_names) + ([data.label_name] if data.labels is not None else [])
    frame = pd.concat([frame, passthrough[extra]], axis=1)
    _write_frame(frame, config.output, "%.17g")
    return 0


# ==================== eval ====================

def _eval_one_seed(config: RunConfig, data: Dataset, loaded_model, seed: int) -> EvalReport:
    train, test = _prepare_split(config, data, seed)
    with RunMonitor(f"eval seed={seed}") as monitor:
        model = loaded_model if loaded_model is not None else fit_model(config, train)
    if loaded_model is not None:
        _check_schema(model, train)

    report = evaluate(
        model, train, test,
        downstream_reg=config.downstream_reg,
        probe_reg=config.probe_reg,
        quadratic_probe=config.quadratic_probe,
    )
    report.model = model_name(model)
    report.split = str(seed)
    report.seconds = monitor.seconds
    report.rss_mb = monitor.rss_mb
    logger.info(f"✅ 种子 {seed}: mmd2={report.mmd2:.6f}, linear_insep={report.linear_insep:.4f}")
    return report


def cmd_eval(config: RunConfig) -> int:
    data = load_csv(config.data, column_spec(config))
    loaded_model = load_model(config.model) if config.model else None
    if loaded_model is not None and config.standardize:
        logger.warning("⚠️ 已加载的模型配合 --standardize：请确认模型就是在标准化数据上拟合的")

    def run(seed: int) -> EvalReport:
        return _eval_one_seed(config, data, loaded_model, seed)

    # map 按输入顺序返回，结果行与种子顺序一致
    with ThreadPoolExecutor(max_workers=config.threads) as pool:
        reports = list(pool.map(run, config.seeds))

    reports.extend(summarize(reports, reports[0].model))
    _write_frame(reports_frame(reports), config.output, "%.10g")
    _log_fit_counts("eval")
    return 0


# ==================== sweep ====================

def _tradeoff_base(config: RunConfig, train: Dataset) -> Tuple[TradeoffModel, float]:
    """公平部分 + 同k的标准PCA；返回 (λ=0 的模型, 拟合耗时)"""
    if config.model:
        model = load_model(config.model)
        if not isinstance(model, TradeoffModel):
            raise ConfigError(f"sweep --model 需要权衡模型文件，实际 {model_name(model)}")
        _check_schema(model, train)
        return model.with_lambda(0.0), 0.0
    with RunMonitor(f"sweep fit {config.method}") as monitor:
        fair = fit_model(config, train)
        standard = fit_standard_pca(train, config.k, center=config.center)
    return TradeoffModel(fair=fair, standard=standard, lam=0.0), monitor.seconds


def cmd_sweep(config: RunConfig) -> int:
    data = load_csv(config.data, column_spec(config))
    seed = config.seeds[0]
    train, test = _prepare_split(config, data, seed)
    base, fit_seconds = _tradeoff_base(config, train)

    reports: List[EvalReport] = []
    for lam in config.lambdas:
        model = base.with_lambda(lam)
        with RunMonitor(f"λ={lam:.4f}") as monitor:
            report = evaluate(
                model, train, test,
                downstream_reg=config.downstream_reg,
                probe_reg=config.probe_reg,
                quadratic_probe=config.quadratic_probe,
            )
        report.model = model_name(model)
        report.split = str(seed)
        report.lam = lam
        # 表示拟合（所有λ共享）+ 本行分类器/探针训练
        report.seconds = fit_seconds + monitor.seconds
        report.rss_mb = monitor.rss_mb
        reports.append(report)
        logger.info(f"λ={lam:.4f}: acc={report.downstream_accuracy}, Δ_DP={report.delta_dp}")

    _write_frame(reports_frame(reports), config.output, "%.10g")
    _log_fit_counts("sweep")
    return 0


# ==================== synth ====================

def mixture_spec(config: RunConfig) -> MixtureSpec:
    if config.preset == "none":
        mean1 = np.zeros(config.d)
        mean1[0] = config.separation
        spec = MixtureSpec(
            d=config.d,
            n_per_group=config.n_per_group,
            mean0=np.zeros(config.d),
            mean1=mean1,
            cov0=config.var0,
            cov1=config.var1,
            seed=config.seed,
        )
    else:
        spec = MixtureSpec.preset(config.preset, d=config.d, n_per_group=config.n_per_group,
                                  seed=config.seed, separation=config.separation)
    if config.label_mode is not None:
        spec = dataclasses.replace(spec, label_mode=config.label_mode)
    return spec


def cmd_synth(config: RunConfig) -> int:
    data = gen_mixture(mixture_spec(config))
    _write_frame(dataset_frame(data), config.output, "%.17g")
    return 0


COMMAND_TABLE: Dict[str, Callable[[RunConfig], int]] = {
    "fit": cmd_fit,
    "transform": cmd_transform,
    "eval": cmd_eval,
    "sweep": cmd_sweep,
    "synth": cmd_synth,
}

"""
评估编排 + 报告输出
训练嵌入上训练探针和下游分类器，测试嵌入上报告全部指标
"""

import logging
from dataclasses import asdict, dataclass
from typing import Iterable, List, Optional

import numpy as np
import pandas as pd

from config.settings import Config
from errors import DegenerateInput, DimensionError
from evaluation.logreg import train_logreg
from evaluation.metrics import explained_variance, fairness_gaps, mmd2
from evaluation.probe import linear_inseparability, quadratic_inseparability, train_probe
from fair_core.dataset import Dataset
from fair_core.pca import ProjectionModel
from kernel.kernels import KernelSpec

logger = logging.getLogger(__name__)

# CSV 列顺序固定
REPORT_COLUMNS = [
    "model",
    "split",
    "lambda",
    "explained_var_fraction",
    "mmd2",
    "linear_insep",
    "quadratic_insep",
    "downstream_accuracy",
    "delta_dp",
    "delta_eo",
    "seconds",
    "rss_mb",
]

METRIC_COLUMNS = REPORT_COLUMNS[3:]


@dataclass
class EvalReport:
    """一个表示的效用与公平指标；不适用的指标为 None"""
    explained_var_fraction: Optional[float] = None
    mmd2: Optional[float] = None
    linear_insep: Optional[float] = None
    quadratic_insep: Optional[float] = None
    downstream_accuracy: Optional[float] = None
    delta_dp: Optional[float] = None
    delta_eo: Optional[float] = None

    # 行元数据
    model: str = ""
    split: str = ""
    lam: Optional[float] = None
    seconds: Optional[float] = None
    rss_mb: Optional[float] = None

    def to_row(self) -> dict:
        row = asdict(self)
        row["lambda"] = row.pop("lam")
        return {column: row[column] for column in REPORT_COLUMNS}

    def render_text(self) -> str:
        """人类可读的多行文本"""
        lines = [f"【{self.model or 'model'}】 split={self.split or '-'}"
                 + (f" λ={self.lam:.4f}" if self.lam is not None else "")]
        for column in METRIC_COLUMNS:
            value = getattr(self, column)
            lines.append(f"     {column}: {'无' if value is None else f'{value:.6f}'}")
        return "\n".join(lines)


def _binary_codes(data: Dataset, attribute: int) -> np.ndarray:
    if not 0 <= attribute < data.n_attributes:
        raise DimensionError(f"评估属性下标 {attribute} 超出范围")
    codes = data.groups[attribute]
    if not np.all(np.isin(codes, (0, 1))):
        raise DegenerateInput(f"评估属性 {data.group_names[attribute]} 必须是二值属性")
    return codes


def evaluate(model,
             train: Dataset,
             test: Dataset,
             downstream_reg: float = None,
             probe_reg: float = None,
             attribute: int = 0,
             mmd_spec: Optional[KernelSpec] = None,
             quadratic_probe: bool = False) -> EvalReport:
    """model 为 ProjectionModel / KernelModel / TradeoffModel（都实现 embed）"""
    downstream_reg = Config.DOWNSTREAM_REG if downstream_reg is None else downstream_reg
    probe_reg = Config.PROBE_REG if probe_reg is None else probe_reg

    E_train = model.embed(train.X)
    E_test = model.embed(test.X)
    train_codes = _binary_codes(train, attribute)
    test_codes = _binary_codes(test, attribute)
    report = EvalReport()

    # 解释方差只对正交投影有意义（核模型的投影在RKHS中）
    if isinstance(model, ProjectionModel):
        X_test = test.X - model.mean[:, None] if model.center else test.X
        report.explained_var_fraction = explained_variance(model.U, X_test)

    raw_mmd2 = mmd2(E_test[:, test_codes == 0], E_test[:, test_codes == 1], spec=mmd_spec)
    report.mmd2 = max(0.0, raw_mmd2)

    probe = train_probe(E_train, train_codes, probe_reg)
    report.linear_insep = linear_inseparability(E_test, test_codes, probe)
    if quadratic_probe:
        report.quadratic_insep = quadratic_inseparability(E_train, train_codes, E_test, test_codes, probe_reg)

    if train.labels is not None and test.labels is not None:
        classifier = train_logreg(E_train, train.labels, downstream_reg)
        predictions = classifier.predict(E_test)
        report.downstream_accuracy = float(np.mean(predictions == test.labels))
        report.delta_dp, report.delta_eo = fairness_gaps(predictions, test_codes, test.labels)
    else:
        logger.info("无任务标签，跳过下游分类指标")

    return report


def summarize(reports: List[EvalReport], model_name: str) -> List[EvalReport]:
    """每个指标的均值/标准差两行（忽略缺省值）"""
    frame = pd.DataFrame([r.to_row() for r in reports])
    summary = []
    for split in ("mean", "std"):
        values = {}
        for column in METRIC_COLUMNS:
            series = pd.to_numeric(frame[column], errors="coerce").dropna()
            if series.empty:
                values[column] = None
            elif split == "mean":
                values[column] = float(series.mean())
            else:
                values[column] = float(series.std(ddof=0))
        summary.append(EvalReport(model=model_name, split=split, **values))
    return summary


def reports_frame(reports: Iterable[EvalReport]) -> pd.DataFrame:
    return pd.DataFrame([r.to_row() for r in reports], columns=REPORT_COLUMNS)


def write_reports(reports: Iterable[EvalReport], path: str):
    """一行一个 (model, split, λ)，列顺序见 REPORT_COLUMNS"""
    reports_frame(reports).to_csv(path, index=False, float_format="%.10g")
    logger.info(f"✅ 报告已写出: {path}")

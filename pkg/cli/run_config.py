"""
运行配置
优先级：命令行参数 > 配置文件（dotenv语法）> Config 默认值
"""

import logging
from dataclasses import dataclass, field, fields
from typing import Any, Dict, List, Optional, Tuple

from config.settings import Config
from errors import ConfigError

logger = logging.getLogger(__name__)

COMMANDS = ("fit", "transform", "eval", "sweep", "synth")
METHODS = ("pca", "fair", "fair-s", "fair-kernel")


@dataclass
class RunConfig:
    command: str
    method: str = "fair"
    k: int = 2
    groups: Tuple[str, ...] = ()
    label: Optional[str] = None
    features: Optional[Tuple[str, ...]] = None
    categorical: Tuple[str, ...] = ()
    eo: bool = False
    center: bool = False
    f: Optional[float] = None
    kernel: Optional[str] = None
    gamma: Optional[float] = None
    jitter: Optional[float] = None
    lambdas: Tuple[float, ...] = field(default_factory=lambda: tuple(Config.lambda_grid()))
    seeds: Tuple[int, ...] = Config.DEFAULT_SEEDS
    test_fraction: float = Config.TEST_FRACTION
    standardize: bool = False
    downstream_reg: float = Config.DOWNSTREAM_REG
    probe_reg: float = Config.PROBE_REG
    quadratic_probe: bool = False
    threads: int = field(default_factory=Config.threads)
    # 路径
    data: Optional[str] = None
    model: Optional[str] = None
    output: Optional[str] = None
    # 合成数据
    preset: str = "prop1"
    d: int = 10
    n_per_group: int = 1000
    separation: float = 4.0
    var0: float = 1.0
    var1: float = 1.0
    seed: int = 0
    label_mode: Optional[str] = None

    @property
    def kernel_kind(self) -> str:
        return self.kernel or "gaussian"

    @property
    def fair_s_fraction(self) -> float:
        return Config.FAIR_S_PRESETS[0] if self.f is None else self.f

    def validate(self) -> "RunConfig":
        """方法/参数兼容性，在开始计算前检查"""
        if self.command not in COMMANDS:
            raise ConfigError(f"未知命令: {self.command}，可选 {COMMANDS}")
        if self.method not in METHODS:
            raise ConfigError(f"未知方法: {self.method}，可选 {METHODS}")
        if self.f is not None and self.method != "fair-s":
            raise ConfigError("--f 只能与 --method fair-s 一起使用")
        if self.f is not None and not 0 < self.f <= 1:
            raise ConfigError(f"--f 必须在 (0, 1] 内，实际 {self.f}")
        kernel_flags = [name for name in ("kernel", "gamma", "jitter") if getattr(self, name) is not None]
        if kernel_flags and self.method != "fair-kernel":
            raise ConfigError(f"{', '.join('--' + n for n in kernel_flags)} 只能与 --method fair-kernel 一起使用")
        if self.eo and self.method not in ("fair", "fair-kernel"):
            raise ConfigError("--eo 只能与 --method fair 或 fair-kernel 一起使用")
        if self.k < 1:
            raise ConfigError(f"--k 必须 ≥ 1，实际 {self.k}")
        if not 0 < self.test_fraction < 1:
            raise ConfigError(f"--test-fraction 必须在 (0, 1) 内，实际 {self.test_fraction}")
        if any(not 0 <= lam <= 1 for lam in self.lambdas):
            raise ConfigError("λ 必须在 [0, 1] 内")
        if self.threads < 1:
            raise ConfigError("--threads 必须 ≥ 1")

        if self.command in ("fit", "transform", "eval", "sweep"):
            if not self.data:
                raise ConfigError(f"{self.command} 需要输入数据CSV")
            if not self.groups:
                raise ConfigError(f"{self.command} 需要至少一个 --group 列")
        if self.command == "fit" and not self.output:
            raise ConfigError("fit 需要 -o 模型输出路径")
        if self.command == "transform" and not self.model:
            raise ConfigError("transform 需要 --model")
        if self.command in ("eval", "sweep") and not self.seeds:
            raise ConfigError(f"{self.command} 需要至少一个种子")
        if self.command == "sweep" and not self.model and self.method == "pca":
            raise ConfigError("sweep 的公平部分必须是 fair / fair-s / fair-kernel")
        if self.command == "sweep" and not self.label:
            raise ConfigError("sweep 需要 --label（下游准确率/Δ_DP/Δ_EO）")
        if self.method == "fair-s" and len(self.groups) > 1:
            raise ConfigError("fair-s 只支持单个二值敏感属性")
        return self


def _parse_bool(value: str) -> bool:
    lowered = value.strip().lower()
    if lowered in ("1", "true", "yes", "on"):
        return True
    if lowered in ("0", "false", "no", "off", ""):
        return False
    raise ConfigError(f"无法解析布尔值: {value!r}")


def _split_list(value: str) -> List[str]:
    return [item.strip() for item in value.split(",") if item.strip()]


def _coerce(name: str, value: Any, default: Any) -> Any:
    """把配置文件里的字符串转成字段类型；命令行值已由 argparse 转换"""
    if not isinstance(value, str):
        return tuple(value) if isinstance(value, list) else value
    try:
        if name in ("groups", "categorical"):
            return tuple(_split_list(value))
        if name == "features":
            return tuple(_split_list(value)) or None
        if name == "lambdas":
            return tuple(float(v) for v in _split_list(value))
        if name == "seeds":
            return tuple(int(v) for v in _split_list(value))
        if isinstance(default, bool):
            return _parse_bool(value)
        if name in ("k", "threads", "d", "n_per_group", "seed"):
            return int(value)
        if name in ("f", "gamma", "jitter", "test_fraction", "downstream_reg", "probe_reg",
                    "separation", "var0", "var1"):
            return float(value)
    except ValueError as e:
        raise ConfigError(f"配置项 {name}={value!r} 无法解析: {e}") from e
    return value


def build_run_config(command: str, cli_values: Dict[str, Any], file_values: Dict[str, str]) -> RunConfig:
    """合并三层来源并校验"""
    known = {f.name: f for f in fields(RunConfig)}
    unknown = sorted(set(file_values) - set(known))
    if unknown:
        raise ConfigError(f"配置文件含未知键: {unknown}")

    defaults = RunConfig(command=command)
    merged: Dict[str, Any] = {}
    for name in known:
        if name == "command":
            continue
        default = getattr(defaults, name)
        if cli_values.get(name) is not None:
            merged[name] = _coerce(name, cli_values[name], default)
        elif name in file_values:
            merged[name] = _coerce(name, file_values[name], default)
    config = RunConfig(command=command, **merged)
    logger.debug(f"运行配置: {config}")
    return config.validate()

import os
from typing import Dict, List, Optional

from dotenv import dotenv_values, load_dotenv

from errors import ConfigError

# .env 优先于进程默认值，不覆盖已设置的环境变量
load_dotenv(override=False)


class Config:
    """配置管理 - 数值默认值 + 环境变量"""

    # 日志级别（debug / info / warning）
    LOG_LEVEL = os.environ.get("FAIRPCA_LOG_LEVEL", "warning").lower()

    # 每种子评估的默认线程数
    THREADS = int(os.environ.get("FAIRPCA_THREADS", "1"))

    # 线性代数容差
    NULLSPACE_RTOL = float(os.environ.get("FAIRPCA_NULLSPACE_RTOL", "1e-10"))
    ZERO_CONSTRAINT_TOL = 1e-12     # ZᵀXᵀ 视为零矩阵的相对阈值
    KERNEL_JITTER = float(os.environ.get("FAIRPCA_KERNEL_JITTER", "1e-5"))
    COV_JITTER = 1e-12              # 合成数据协方差Cholesky的抖动

    # 逻辑回归：目标 = 平均log损失 + reg·‖w‖²
    # reg = 1/(2·C·n)，C = 1/(2·n·0.01) 时恰好 reg = 0.01，与样本量无关
    DOWNSTREAM_REG = 0.01
    PROBE_REG = 0.01
    LOGREG_GTOL = 1e-6
    LOGREG_MAX_ITER = 10000

    # Fair PCA-S 预设比例
    FAIR_S_PRESETS = (0.5, 0.85)

    # 权衡参数网格 (i/10)^3
    LAMBDA_STEPS = 10

    # MMD 中位数启发式最多使用的点数
    MMD_MEDIAN_MAX_POINTS = 1000
    MMD_CHUNK = 2048

    # 评估协议
    TEST_FRACTION = 0.3
    DEFAULT_SEEDS = tuple(range(10))

    # 模型文件格式版本
    MODEL_FORMAT_VERSION = 1

    @classmethod
    def lambda_grid(cls) -> List[float]:
        """权衡参数网格 λ_i = (i/10)^3, i = 0..10"""
        return [(i / cls.LAMBDA_STEPS) ** 3 for i in range(cls.LAMBDA_STEPS + 1)]

    @classmethod
    def threads(cls) -> int:
        return max(1, cls.THREADS)

    @classmethod
    def load_file(cls, path: Optional[str]) -> Dict[str, str]:
        """读取可选配置文件（dotenv语法），键为CLI选项名"""
        if not path:
            return {}
        if not os.path.exists(path):
            raise ConfigError(f"配置文件不存在: {path}")
        values = dotenv_values(path)
        return {key.strip().lower().replace("-", "_"): value
                for key, value in values.items() if value is not None}

    @classmethod
    def validate_config(cls):
        """验证配置"""
        if cls.LOG_LEVEL not in ("debug", "info", "warning"):
            raise ConfigError(f"FAIRPCA_LOG_LEVEL 不合法: {cls.LOG_LEVEL}")
        if cls.KERNEL_JITTER < 0:
            raise ConfigError("FAIRPCA_KERNEL_JITTER 必须 ≥ 0")
        if cls.NULLSPACE_RTOL <= 0:
            raise ConfigError("FAIRPCA_NULLSPACE_RTOL 必须 > 0")
        return True

"""
日志开关 - 终极版
只在这里改，重启生效
"""

# ============== 在这里改 ==============
# 全局级别来自 FAIRPCA_LOG_LEVEL："warning"=只错误, "info"=显示状态, "debug"=全显示

# 计算步骤（务必False，除非调试）
STEP_LOGS = {
    "linalg": False,       # 特征分解/零空间
    "fair_core": False,    # 拟合
    "kernel": False,       # 核矩阵
    "evaluation": False,   # 指标
    "data": False,         # 数据读取/切分
}

# 流程状态（建议True）
STATUS_LOGS = {
    "cli": True,           # 命令进度
    "system_monitor": True,
}
# ============== 别改下面 ==============

import logging

from config.settings import Config

_LEVELS = {"debug": logging.DEBUG, "info": logging.INFO, "warning": logging.WARNING}


def setup_all_loggers(level_name: str = None):
    level_name = (level_name or Config.LOG_LEVEL).lower()
    level = _LEVELS.get(level_name, logging.WARNING)
    # 日志走stderr，stdout留给结果
    logging.basicConfig(level=level, format='%(asctime)s - %(levelname)s - %(message)s')

    for name, enabled in STEP_LOGS.items():
        logging.getLogger(name).setLevel(logging.INFO if enabled else level)
    for name, enabled in STATUS_LOGS.items():
        logging.getLogger(name).setLevel(min(level, logging.INFO) if enabled else level)

    logging.getLogger(__name__).debug(
        f"✅ 日志: {level_name} | 步骤: {'开' if any(STEP_LOGS.values()) else '关'}"
    )

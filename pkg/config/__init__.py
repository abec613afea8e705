"""
config 顶级模块
功能：数值默认值 + 环境变量 + 日志开关
"""

from .settings import Config
from .log_control import setup_all_loggers

__all__ = ['Config', 'setup_all_loggers']

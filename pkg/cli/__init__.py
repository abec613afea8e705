"""
cli 顶级模块
功能：参数解析 + 运行配置合并/校验 + 五个子命令
"""

from .run_config import RunConfig, build_run_config, COMMANDS, METHODS
from .parser import build_parser
from .commands import COMMAND_TABLE, fit_model, fit_counts, column_spec, mixture_spec, model_name

__all__ = [
    'RunConfig',
    'build_run_config',
    'COMMANDS',
    'METHODS',
    'build_parser',
    'COMMAND_TABLE',
    'fit_model',
    'fit_counts',
    'column_spec',
    'mixture_spec',
    'model_name',
]

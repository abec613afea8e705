"""
运行监控模块
按需采集耗时与内存，不常驻运行
"""
from .collector import RunMonitor

__version__ = "1.0.0"
__all__ = ['RunMonitor']

"""
运行监控器
按需采集耗时与进程内存，不保存历史数据
"""
import logging
import os
import time
from typing import Optional

import psutil

logger = logging.getLogger(__name__)


class RunMonitor:
    """
    计时 + 内存采集
    用法：
        with RunMonitor("fair") as monitor:
            ...
        monitor.seconds, monitor.rss_mb
    """

    def __init__(self, label: str = ""):
        self.label = label
        self.pid = os.getpid()
        self.start_time: Optional[float] = None
        self.seconds: Optional[float] = None
        self.rss_mb: Optional[float] = None

    def __enter__(self) -> "RunMonitor":
        self.start_time = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        self.seconds = time.perf_counter() - self.start_time
        self.rss_mb = self._get_process_memory_mb()
        if exc_type is None:
            logger.info(f"⏱️ {self.label or '任务'}: {self.seconds:.3f}s, 内存 {self.rss_mb:.1f}MB")
        return False

    def _get_process_memory_mb(self) -> float:
        """获取当前进程内存使用（MB）"""
        try:
            return psutil.Process(self.pid).memory_info().rss / 1024 / 1024
        except psutil.Error:
            return 0.0

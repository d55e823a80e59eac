"""IntGC 日志工具

所有模块统一通过 get_logger("IntGC.xxx") 获取日志器。
日志只写 stderr，命令行的 stdout 只输出结果数据，保证逐字节可复现。
"""

import logging
import sys
from typing import Optional, TextIO

import structlog
from structlog._config import BoundLoggerLazyProxy

_configured = False


def configure_logging(level: str = "WARNING", json_format: bool = False, stream: Optional[TextIO] = None) -> None:
    """配置 structlog

    Args:
        level: 日志级别名称（DEBUG/INFO/WARNING/ERROR）
        json_format: 是否以 JSON 行输出（便于脚本收集）
        stream: 输出流，缺省为 sys.stderr
    """
    global _configured
    numeric_level = getattr(logging, str(level).upper(), logging.WARNING)
    renderer = (
        structlog.processors.JSONRenderer(ensure_ascii=False)
        if json_format
        else structlog.dev.ConsoleRenderer(colors=False)
    )
    structlog.configure(
        processors=[
            structlog.processors.add_log_level,
            structlog.processors.TimeStamper(fmt="%H:%M:%S"),
            renderer,
        ],
        wrapper_class=structlog.make_filtering_bound_logger(numeric_level),
        logger_factory=structlog.PrintLoggerFactory(file=stream if stream is not None else sys.stderr),
        cache_logger_on_first_use=False,
    )
    _configured = True


def get_logger(name: str):
    """获取带模块名的日志器"""
    if not _configured:
        configure_logging()
    return BoundLoggerLazyProxy(None, initial_values={"logger": name})

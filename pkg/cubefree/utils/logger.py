"""
Loguru-based logging configuration for the engine
Provides console and rotating file logging plus in-memory capture for bench bundles
"""

import sys
from contextlib import contextmanager
from pathlib import Path
from typing import Iterator, List, Optional

from loguru import logger


def setup_logger(log_dir: Optional[Path] = None, level: str = "INFO") -> None:
    """
    Configure loguru for the command-line tools

    Args:
        log_dir: Directory for log files (no file sink when None)
        level: Minimum level for the console sink
    """
    # Remove default handler
    logger.remove()

    logger.add(
        sys.stderr,
        format="<green>{time:HH:mm:ss}</green> | <level>{level: <8}</level> | <cyan>{name}</cyan>:<cyan>{function}</cyan> - <level>{message}</level>",
        level=level,
        colorize=True
    )

    if log_dir is not None:
        log_dir = Path(log_dir)
        log_dir.mkdir(parents=True, exist_ok=True)
        logger.add(
            log_dir / "cubefree_{time:YYYY-MM-DD}.log",
            format="{time:YYYY-MM-DD HH:mm:ss} | {level: <8} | {name}:{function}:{line} - {message}",
            level="DEBUG",
            rotation="10 MB",
            retention="7 days",
            compression="zip"
        )

    logger.debug("Logging system initialized")


@contextmanager
def capture_log(level: str = "DEBUG") -> Iterator[List[str]]:
    """
    Collect formatted log lines emitted inside the block

    Yields:
        List that receives one string per log record
    """
    lines: List[str] = []
    sink_id = logger.add(
        lines.append,
        format="[{time:HH:mm:ss}] [{level}] {name}:{function} - {message}",
        level=level,
        colorize=False
    )
    try:
        yield lines
    finally:
        logger.remove(sink_id)


def get_logger(name: str = None):
    """
    Get a logger instance

    Args:
        name: Optional name for the logger context

    Returns:
        Configured logger instance
    """
    if name:
        return logger.bind(name=name)
    return logger

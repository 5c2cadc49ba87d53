"""Utility functions and helpers"""
from cubefree.utils.logger import setup_logger, get_logger, capture_log
from cubefree.utils.groupfile import load_group, dump_group

__all__ = ["setup_logger", "get_logger", "capture_log", "load_group", "dump_group"]

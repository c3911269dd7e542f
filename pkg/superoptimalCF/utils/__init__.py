"""Utility modules"""

from .logger import setup_logger
from .file_handler import FileHandler
from .progress_tracker import ProgressTracker

__all__ = [
    'setup_logger',
    'FileHandler',
    'ProgressTracker',
]

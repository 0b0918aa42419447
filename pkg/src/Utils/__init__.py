"""
Utility functions for wmforge
"""

from .logger import setup_logging, get_logger, LoggerMixin
from .file_manager import FileManager
from .seeding import seed_everything, make_generator, resolve_device
from .errors import (
    WmForgeError,
    ConfigValidationError,
    DatasetError,
    ShapeMismatchError,
    TrainingDivergedError,
    GanDivergenceError,
    EmbeddingFailedError,
    CheckpointError,
    DetectionRefusedError,
    IncompleteReportError
)

__all__ = [
    'setup_logging',
    'get_logger',
    'LoggerMixin',
    'FileManager',
    'seed_everything',
    'make_generator',
    'resolve_device',
    'WmForgeError',
    'ConfigValidationError',
    'DatasetError',
    'ShapeMismatchError',
    'TrainingDivergedError',
    'GanDivergenceError',
    'EmbeddingFailedError',
    'CheckpointError',
    'DetectionRefusedError',
    'IncompleteReportError'
]

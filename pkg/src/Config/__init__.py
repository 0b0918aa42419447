"""
Configuration module for wmforge
"""

from .app_config import (
    AppConfig,
    RuntimeConfig,
    UIConfig,
    LoggingConfig,
    config
)
from .experiment_config import (
    ExperimentConfig,
    DatasetSection,
    TriggerSection,
    EmbedSection,
    DetectSection,
    RemoveSection,
    EvalSection,
    DATASET_SHAPES,
    DATASET_NUM_CLASSES
)

__all__ = [
    'AppConfig',
    'RuntimeConfig',
    'UIConfig',
    'LoggingConfig',
    'config',
    'ExperimentConfig',
    'DatasetSection',
    'TriggerSection',
    'EmbedSection',
    'DetectSection',
    'RemoveSection',
    'EvalSection',
    'DATASET_SHAPES',
    'DATASET_NUM_CLASSES'
]

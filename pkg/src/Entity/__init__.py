"""
Entity definitions for wmforge
"""

from .image_data import (
    TriggerName,
    ImageBatch,
    TriggerPattern,
    WatermarkSpec
)
from .training import (
    Architecture,
    OptimizerType,
    TrainConfig,
    TrainHistory,
    WatermarkedModel
)
from .detection import (
    GanLossWeights,
    ReverseResult,
    DetectionReport
)
from .removal import (
    MAX_DATA_FRACTION,
    RemovalConfig,
    RemovalOutcome
)
from .evaluation import (
    EvaluationReport,
    PerturbationTable,
    SweepCell,
    SweepTable
)
from .manifest import (
    ArtifactRecord,
    RunManifest
)

__all__ = [
    # Data entities
    'TriggerName',
    'ImageBatch',
    'TriggerPattern',
    'WatermarkSpec',

    # Training entities
    'Architecture',
    'OptimizerType',
    'TrainConfig',
    'TrainHistory',
    'WatermarkedModel',

    # Detection entities
    'GanLossWeights',
    'ReverseResult',
    'DetectionReport',

    # Removal entities
    'MAX_DATA_FRACTION',
    'RemovalConfig',
    'RemovalOutcome',

    # Evaluation entities
    'EvaluationReport',
    'PerturbationTable',
    'SweepCell',
    'SweepTable',

    # Manifest entities
    'ArtifactRecord',
    'RunManifest'
]

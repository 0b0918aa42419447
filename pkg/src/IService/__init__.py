"""
Service interfaces for wmforge
"""

from .idata_service import IDataService
from .imodel_service import IModelService, EpochCallback
from .iembed_service import IEmbedService
from .idetect_service import IDetectService, ClassCallback
from .iremove_service import IRemoveService
from .ieval_service import IEvalService
from .iui_service import IUIService

__all__ = [
    'IDataService',
    'IModelService',
    'EpochCallback',
    'IEmbedService',
    'IDetectService',
    'ClassCallback',
    'IRemoveService',
    'IEvalService',
    'IUIService'
]

"""
워터마크 제거 서비스 인터페이스
"""

from abc import ABC, abstractmethod
from typing import Optional, Tuple

import torch.nn as nn

from ..Entity import ImageBatch, TriggerPattern, RemovalConfig, TrainHistory
from .imodel_service import EpochCallback


class IRemoveService(ABC):
    """unlearning 미세조정 인터페이스"""

    @abstractmethod
    def build_unlearn_set(self, clean_subset: ImageBatch, reversed_trigger: TriggerPattern) -> ImageBatch:
        """역추적 트리거를 스탬핑하고 원래 라벨 유지"""
        pass

    @abstractmethod
    def remove_watermark(
        self,
        wm_model: nn.Module,
        clean_subset: ImageBatch,
        reversed_trigger: TriggerPattern,
        cfg: RemovalConfig,
        on_epoch: Optional[EpochCallback] = None
    ) -> Tuple[nn.Module, TrainHistory]:
        """unlearn 세트(및 선택적으로 깨끗한 세트)로 미세조정한 새 모델 반환"""
        pass

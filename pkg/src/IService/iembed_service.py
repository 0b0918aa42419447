"""
워터마크 삽입 서비스 인터페이스
"""

from abc import ABC, abstractmethod
from typing import Optional

from ..Entity import ImageBatch, WatermarkSpec, TrainConfig, WatermarkedModel
from .imodel_service import EpochCallback


class IEmbedService(ABC):
    """모델 소유자 측 워터마크 삽입 인터페이스"""

    @abstractmethod
    def embed_watermark(
        self,
        train: ImageBatch,
        test: ImageBatch,
        spec: WatermarkSpec,
        cfg: TrainConfig,
        architecture: str,
        min_retention: float = 0.99,
        on_epoch: Optional[EpochCallback] = None,
        exclude_target_class: Optional[bool] = None
    ) -> WatermarkedModel:
        """깨끗한 데이터 + 포이즌 데이터로 학습하고 기본 지표 측정"""
        pass

"""
워터마크 탐지 서비스 인터페이스
"""

from abc import ABC, abstractmethod
from typing import Callable, Optional

import torch.nn as nn

from ..Entity import ImageBatch, GanLossWeights, ReverseResult, DetectionReport
from ..Config import DetectSection

ClassCallback = Callable[[ReverseResult], None]


class IDetectService(ABC):
    """GAN 기반 트리거 역추적 / 탐지 인터페이스"""

    @abstractmethod
    def reverse_for_class(
        self,
        target_model: nn.Module,
        clean: ImageBatch,
        assumed_class: int,
        weights: GanLossWeights,
        cfg: DetectSection,
        seed: int = 0,
        out_dir: Optional[str] = None
    ) -> ReverseResult:
        """가정 클래스에 대해 생성기/판별자를 학습하고 섭동 크기 측정"""
        pass

    @abstractmethod
    def detect_watermark(
        self,
        target_model: nn.Module,
        clean: ImageBatch,
        threshold_T: float,
        weights: GanLossWeights,
        cfg: DetectSection,
        seed: int = 0,
        out_dir: Optional[str] = None,
        on_class: Optional[ClassCallback] = None
    ) -> DetectionReport:
        """모든 클래스를 열거하여 탐지 보고서 작성"""
        pass

"""
평가 서비스 인터페이스
"""

from abc import ABC, abstractmethod
from typing import Optional

import torch.nn as nn

from ..Entity import ImageBatch, WatermarkSpec, DetectionReport, PerturbationTable


class IEvalService(ABC):
    """정확도 / 유지율 / 섭동 표 인터페이스"""

    @abstractmethod
    def test_accuracy(self, model: nn.Module, test: ImageBatch) -> float:
        """argmax 예측이 라벨과 같은 비율"""
        pass

    @abstractmethod
    def retention_rate(
        self,
        model: nn.Module,
        clean_test: ImageBatch,
        spec: WatermarkSpec,
        exclude_target_class: Optional[bool] = None
    ) -> float:
        """스탬핑된 테스트 이미지 중 대상 클래스로 예측된 비율 S_y/S"""
        pass

    @abstractmethod
    def perturbation_table(self, report: DetectionReport) -> PerturbationTable:
        """클래스별 섭동 크기 표"""
        pass

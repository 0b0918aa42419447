"""
모델 서비스 인터페이스
"""

from abc import ABC, abstractmethod
from typing import Callable, Optional, Tuple

import torch
import torch.nn as nn

from ..Entity import ImageBatch, TrainConfig, TrainHistory

EpochCallback = Callable[[int, int, float, float], None]


class IModelService(ABC):
    """분류기 생성 / 학습 / 예측 / 체크포인트 인터페이스"""

    @abstractmethod
    def build_classifier(self, architecture: str, seed: int = 0, num_classes: int = 10) -> nn.Module:
        """새로 초기화된 분류기 생성"""
        pass

    @abstractmethod
    def train_classifier(
        self,
        model: nn.Module,
        data: ImageBatch,
        cfg: TrainConfig,
        on_epoch: Optional[EpochCallback] = None
    ) -> Tuple[nn.Module, TrainHistory]:
        """교차 엔트로피 최소화 학습"""
        pass

    @abstractmethod
    def predict(self, model: nn.Module, batch: ImageBatch) -> Tuple[torch.Tensor, torch.Tensor]:
        """평가 모드 로짓과 argmax 라벨"""
        pass

    @abstractmethod
    def save_checkpoint(self, model: nn.Module, path: str, seed: int = 0) -> str:
        """헤더 포함 체크포인트 저장"""
        pass

    @abstractmethod
    def load_checkpoint(self, path: str, expected_architecture: Optional[str] = None) -> nn.Module:
        """체크포인트 로드 (헤더 검증)"""
        pass

"""
워터마크 제거 서비스 구현 - unlearning 미세조정

1. 역추적한 트리거를 깨끗한 부분 집합에 덧씌운다.
2. 라벨은 원래 정답 라벨을 유지한다.
3. 그 세트 (선택적으로 깨끗한 세트와 1:1) 로 미세조정한다.
"""

import copy
from typing import Optional, Tuple

import torch.nn as nn

from ..IService import IRemoveService, EpochCallback
from ..Entity import ImageBatch, TriggerPattern, RemovalConfig, TrainHistory
from ..Utils import LoggerMixin
from .data_service import DataService
from .model_service import ModelService


class RemoveService(IRemoveService, LoggerMixin):
    """워터마크 제거 서비스 구현 클래스"""

    def __init__(self, data_service: Optional[DataService] = None, model_service: Optional[ModelService] = None):
        self.data_service = data_service or DataService()
        self.model_service = model_service or ModelService()

    def build_unlearn_set(self, clean_subset: ImageBatch, reversed_trigger: TriggerPattern) -> ImageBatch:
        """스탬핑은 하되 라벨은 그대로"""
        unlearn = self.data_service.stamp(clean_subset, reversed_trigger)
        self.logger.info(f"unlearn 세트 생성: {len(unlearn)}개 (트리거 픽셀 {reversed_trigger.pixel_count})")
        return unlearn

    def build_finetune_set(self, clean_subset: ImageBatch, reversed_trigger: TriggerPattern,
                           mix_clean: bool) -> ImageBatch:
        unlearn = self.build_unlearn_set(clean_subset, reversed_trigger)
        if not mix_clean:
            return unlearn
        return ImageBatch.concat([unlearn, clean_subset])

    def remove_watermark(
        self,
        wm_model: nn.Module,
        clean_subset: ImageBatch,
        reversed_trigger: TriggerPattern,
        cfg: RemovalConfig,
        on_epoch: Optional[EpochCallback] = None
    ) -> Tuple[nn.Module, TrainHistory]:
        """입력 모델은 그대로 두고 복사본을 미세조정"""
        model = copy.deepcopy(wm_model)
        for parameter in model.parameters():
            parameter.requires_grad_(True)

        finetune_set = self.build_finetune_set(clean_subset, reversed_trigger, cfg.mix_clean)
        self.logger.info(
            f"미세조정 시작: {len(finetune_set)}개, epochs={cfg.epochs}, lr={cfg.learning_rate}, "
            f"mix_clean={cfg.mix_clean}")
        model, history = self.model_service.train_classifier(model, finetune_set, cfg.train_config(), on_epoch)
        model.eval()
        return model, history

"""
워터마크 삽입 서비스 구현 (모델 소유자 측)
"""

from typing import Optional

from ..IService import IEmbedService, EpochCallback
from ..Entity import ImageBatch, WatermarkSpec, TrainConfig, WatermarkedModel
from ..Utils import LoggerMixin, EmbeddingFailedError
from .data_service import DataService
from .model_service import ModelService
from .eval_service import EvalService


class EmbedService(IEmbedService, LoggerMixin):
    """워터마크 삽입 서비스 구현 클래스"""

    def __init__(
        self,
        data_service: Optional[DataService] = None,
        model_service: Optional[ModelService] = None,
        eval_service: Optional[EvalService] = None
    ):
        self.data_service = data_service or DataService()
        self.model_service = model_service or ModelService()
        self.eval_service = eval_service or EvalService(self.data_service, self.model_service)

    def build_training_set(self, train: ImageBatch, spec: WatermarkSpec, seed: int) -> ImageBatch:
        """깨끗한 학습 세트 뒤에 포이즌 샘플을 덧붙임 (poison_rate=0 이면 깨끗한 세트 그대로)"""
        if spec.poison_rate == 0:
            self.logger.warning("poison_rate=0: 트리거 세트 없이 일반 학습을 진행합니다.")
            return train
        watermark_set = self.data_service.make_watermark_set(train, spec, seed)
        return ImageBatch.concat([train, watermark_set])

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
        """포이즌 데이터와 함께 학습한 뒤 기본 정확도/유지율 측정"""
        if spec.target_class >= train.num_classes:
            raise ValueError(f"target_class {spec.target_class} out of range")

        training_set = self.build_training_set(train, spec, cfg.seed)
        model = self.model_service.build_classifier(architecture, seed=cfg.seed, num_classes=train.num_classes)
        model, history = self.model_service.train_classifier(model, training_set, cfg, on_epoch)

        # 유지율은 학습에 쓰이지 않은 테스트 이미지로만 측정
        accuracy = self.eval_service.test_accuracy(model, test)
        retention = self.eval_service.retention_rate(model, test, spec, exclude_target_class)
        self.logger.info(f"삽입 결과: accuracy={accuracy:.4f} retention={retention:.4f}")

        if retention < min_retention:
            raise EmbeddingFailedError(retention, min_retention, accuracy)

        return WatermarkedModel(
            model=model,
            spec=spec,
            train_config=cfg,
            basic_accuracy=accuracy,
            basic_retention=retention,
            history=history
        )

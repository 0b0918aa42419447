"""
워터마크 제거 관련 엔티티 정의
"""

from dataclasses import dataclass, field
from typing import Dict, Any, Optional

from .training import OptimizerType, TrainConfig, TrainHistory

# 공격자가 사용할 수 있는 학습 데이터 비율 상한
MAX_DATA_FRACTION = 0.10


@dataclass
class RemovalConfig:
    """unlearning 미세조정 설정"""
    data_fraction: float = 0.10
    epochs: int = 80
    learning_rate: float = 1e-4
    mix_clean: bool = True
    seed: int = 0
    batch_size: int = 128
    optimizer: OptimizerType = OptimizerType.ADAM

    def __post_init__(self):
        if isinstance(self.optimizer, str):
            self.optimizer = OptimizerType(self.optimizer)
        if not 0.0 < self.data_fraction <= MAX_DATA_FRACTION:
            raise ValueError(f"data_fraction must lie in (0, {MAX_DATA_FRACTION}], got {self.data_fraction}")
        if self.epochs < 0:
            raise ValueError("epochs must be >= 0")
        if not self.learning_rate > 0:
            raise ValueError("learning_rate must be > 0")

    def train_config(self) -> TrainConfig:
        """미세조정 루프용 TrainConfig"""
        return TrainConfig(
            epochs=self.epochs,
            batch_size=self.batch_size,
            learning_rate=self.learning_rate,
            seed=self.seed,
            optimizer=self.optimizer
        )

    def to_dict(self) -> Dict[str, Any]:
        """딕셔너리로 변환"""
        return {
            "data_fraction": self.data_fraction,
            "epochs": self.epochs,
            "learning_rate": self.learning_rate,
            "mix_clean": self.mix_clean,
            "seed": self.seed,
            "batch_size": self.batch_size,
            "optimizer": self.optimizer.value
        }


@dataclass
class RemovalOutcome:
    """제거 전후 지표 (사이드카)"""
    config: RemovalConfig
    pre_accuracy: Optional[float] = None
    post_accuracy: Optional[float] = None
    pre_retention: Optional[float] = None
    post_retention: Optional[float] = None
    reversed_trigger_fire_rate: Optional[float] = None
    detected_class: Optional[int] = None
    history: TrainHistory = field(default_factory=TrainHistory)

    def to_dict(self) -> Dict[str, Any]:
        """딕셔너리로 변환"""
        return {
            "config": self.config.to_dict(),
            "pre_accuracy": self.pre_accuracy,
            "post_accuracy": self.post_accuracy,
            "pre_retention": self.pre_retention,
            "post_retention": self.post_retention,
            "reversed_trigger_fire_rate": self.reversed_trigger_fire_rate,
            "detected_class": self.detected_class,
            "history": self.history.to_dict()
        }

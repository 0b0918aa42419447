"""
학습 관련 엔티티 정의
"""

from dataclasses import dataclass, field
from datetime import datetime
from typing import Dict, List, Any, Optional
from enum import Enum

import torch.nn as nn

from .image_data import WatermarkSpec


class Architecture(Enum):
    """분류기 구조"""
    LENET5 = "lenet5"
    RESNET18 = "resnet18"


class OptimizerType(Enum):
    """옵티마이저 종류"""
    ADAM = "adam"
    SGD = "sgd"


@dataclass
class TrainConfig:
    """학습 설정 엔티티"""
    epochs: int = 80
    batch_size: int = 128
    learning_rate: float = 1e-3
    seed: int = 0
    optimizer: OptimizerType = OptimizerType.ADAM

    def __post_init__(self):
        if isinstance(self.optimizer, str):
            self.optimizer = OptimizerType(self.optimizer)
        if self.epochs < 0:
            raise ValueError("epochs must be >= 0")
        if self.batch_size < 1:
            raise ValueError("batch_size must be >= 1")
        if not self.learning_rate > 0:
            raise ValueError("learning_rate must be > 0")

    def to_dict(self) -> Dict[str, Any]:
        """딕셔너리로 변환"""
        return {
            "epochs": self.epochs,
            "batch_size": self.batch_size,
            "learning_rate": self.learning_rate,
            "seed": self.seed,
            "optimizer": self.optimizer.value
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'TrainConfig':
        """딕셔너리에서 생성"""
        return cls(
            epochs=data.get("epochs", 80),
            batch_size=data.get("batch_size", 128),
            learning_rate=data.get("learning_rate", 1e-3),
            seed=data.get("seed", 0),
            optimizer=OptimizerType(data.get("optimizer", "adam"))
        )


@dataclass
class TrainHistory:
    """에폭별 학습 기록"""
    losses: List[float] = field(default_factory=list)
    accuracies: List[float] = field(default_factory=list)

    def record(self, loss: float, accuracy: float):
        self.losses.append(loss)
        self.accuracies.append(accuracy)

    def to_dict(self) -> Dict[str, Any]:
        return {"losses": self.losses, "accuracies": self.accuracies}


@dataclass
class WatermarkedModel:
    """워터마크가 삽입된 모델 엔티티"""
    model: nn.Module
    spec: WatermarkSpec
    train_config: TrainConfig
    basic_accuracy: float = 0.0
    basic_retention: float = 0.0
    history: TrainHistory = field(default_factory=TrainHistory)
    created_at: datetime = field(default_factory=datetime.now)
    checkpoint_path: Optional[str] = None

    @property
    def seed(self) -> int:
        return self.train_config.seed

    def sidecar(self) -> Dict[str, Any]:
        """JSON 사이드카 {spec, basic_accuracy, basic_retention, seed}"""
        return {
            "spec": self.spec.to_dict(),
            "basic_accuracy": self.basic_accuracy,
            "basic_retention": self.basic_retention,
            "seed": self.seed,
            "provenance": {
                "train_config": self.train_config.to_dict(),
                "created_at": self.created_at.isoformat(),
                "history": self.history.to_dict()
            }
        }

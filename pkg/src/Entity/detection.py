"""
워터마크 역추적 / 탐지 결과 엔티티
"""

import statistics
from dataclasses import dataclass, field
from datetime import datetime
from typing import Dict, List, Any, Optional

import torch

from .image_data import TriggerPattern

# 정규분포 가정 하에서 MAD 를 표준편차로 환산하는 상수
MAD_CONSISTENCY = 1.4826


@dataclass
class GanLossWeights:
    """결합 손실의 가중치 (lambda1: 워터마크 항, lambda2: 섭동 크기 항)"""
    lambda1: float = 1.0
    lambda2: float = 0.1

    def __post_init__(self):
        if not (self.lambda1 > 0 and self.lambda2 > 0):
            raise ValueError("lambda1 and lambda2 must both be > 0")

    def to_dict(self) -> Dict[str, float]:
        return {"lambda1": self.lambda1, "lambda2": self.lambda2}


@dataclass
class ReverseResult:
    """가정 클래스 하나에 대한 역추적 결과"""
    assumed_class: int
    mean_pert_size: Optional[float] = None
    best_trigger: Optional[TriggerPattern] = None
    generator_ckpt: Optional[str] = None
    attack_success_rate: float = 0.0
    error: Optional[str] = None
    trigger_png_path: Optional[str] = None
    trigger_path: Optional[str] = None
    perturbation_path: Optional[str] = None
    # 최소 섭동 후보 원본 (국소화 지표용, 직렬화하지 않음)
    best_perturbation: Optional[torch.Tensor] = field(default=None, repr=False)

    def __post_init__(self):
        if self.mean_pert_size is not None and self.mean_pert_size < 0:
            raise ValueError("mean_pert_size must be >= 0")

    @property
    def complete(self) -> bool:
        return self.error is None and self.mean_pert_size is not None

    def to_dict(self) -> Dict[str, Any]:
        """딕셔너리로 변환"""
        return {
            "class": self.assumed_class,
            "mean_pert_size": self.mean_pert_size,
            "attack_success_rate": self.attack_success_rate,
            "trigger_png_path": self.trigger_png_path,
            "trigger_path": self.trigger_path,
            "perturbation_path": self.perturbation_path,
            "generator_ckpt": self.generator_ckpt,
            "trigger": self.best_trigger.to_dict() if self.best_trigger is not None else None,
            "error": self.error
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'ReverseResult':
        """딕셔너리에서 생성 (트리거 텐서는 trigger_path 에서 별도 로드)"""
        return cls(
            assumed_class=data["class"],
            mean_pert_size=data.get("mean_pert_size"),
            generator_ckpt=data.get("generator_ckpt"),
            attack_success_rate=data.get("attack_success_rate", 0.0),
            error=data.get("error"),
            trigger_png_path=data.get("trigger_png_path"),
            trigger_path=data.get("trigger_path"),
            perturbation_path=data.get("perturbation_path")
        )


@dataclass
class DetectionReport:
    """전체 클래스 열거 탐지 보고서"""
    per_class: List[ReverseResult]
    threshold_T: float = 9.5
    detected: bool = False
    detected_class: Optional[int] = None
    weights: GanLossWeights = field(default_factory=GanLossWeights)
    seed: int = 0
    created_at: datetime = field(default_factory=datetime.now)

    @classmethod
    def decide(
        cls,
        per_class: List[ReverseResult],
        threshold_T: float,
        weights: GanLossWeights,
        seed: int = 0
    ) -> 'DetectionReport':
        """임계값 T 미만의 클래스가 있으면 탐지, 그중 최소 섭동 클래스를 선택"""
        outliers = [r for r in per_class if r.complete and r.mean_pert_size < threshold_T]
        detected_class = None
        if outliers:
            detected_class = min(outliers, key=lambda r: (r.mean_pert_size, r.assumed_class)).assumed_class
        return cls(
            per_class=sorted(per_class, key=lambda r: r.assumed_class),
            threshold_T=threshold_T,
            detected=bool(outliers),
            detected_class=detected_class,
            weights=weights,
            seed=seed
        )

    @property
    def incomplete_classes(self) -> List[int]:
        return [r.assumed_class for r in self.per_class if not r.complete]

    @property
    def is_complete(self) -> bool:
        return not self.incomplete_classes

    @property
    def outlier_classes(self) -> List[int]:
        return [r.assumed_class for r in self.per_class
                if r.complete and r.mean_pert_size < self.threshold_T]

    def result_for(self, assumed_class: int) -> Optional[ReverseResult]:
        for result in self.per_class:
            if result.assumed_class == assumed_class:
                return result
        return None

    def separation_ratio(self, target_class: Optional[int] = None) -> Optional[float]:
        """대상 클래스 섭동 크기 / 나머지 클래스 중앙값"""
        target_class = self.detected_class if target_class is None else target_class
        target = self.result_for(target_class) if target_class is not None else None
        others = [r.mean_pert_size for r in self.per_class
                  if r.complete and r.assumed_class != target_class]
        if target is None or not target.complete or not others:
            return None
        median = statistics.median(others)
        if median <= 0:
            return None
        return target.mean_pert_size / median

    def anomaly_index(self) -> Optional[float]:
        """최솟값의 MAD 기반 이상 지수 (참고용)"""
        sizes = [r.mean_pert_size for r in self.per_class if r.complete]
        if len(sizes) < 3:
            return None
        median = statistics.median(sizes)
        mad = MAD_CONSISTENCY * statistics.median(abs(s - median) for s in sizes)
        if mad == 0:
            return None
        return abs(min(sizes) - median) / mad

    def to_dict(self) -> Dict[str, Any]:
        """JSON 직렬화용 딕셔너리"""
        return {
            "per_class": [r.to_dict() for r in self.per_class],
            "threshold_T": self.threshold_T,
            "detected": self.detected,
            "detected_class": self.detected_class,
            "lambda1": self.weights.lambda1,
            "lambda2": self.weights.lambda2,
            "seed": self.seed,
            "incomplete_classes": self.incomplete_classes,
            "separation_ratio": self.separation_ratio(),
            "anomaly_index": self.anomaly_index(),
            "created_at": self.created_at.isoformat()
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'DetectionReport':
        """딕셔너리에서 생성"""
        return cls(
            per_class=[ReverseResult.from_dict(r) for r in data.get("per_class", [])],
            threshold_T=data.get("threshold_T", 9.5),
            detected=data.get("detected", False),
            detected_class=data.get("detected_class"),
            weights=GanLossWeights(data.get("lambda1", 1.0), data.get("lambda2", 0.1)),
            seed=data.get("seed", 0),
            created_at=datetime.fromisoformat(data.get("created_at", datetime.now().isoformat()))
        )

"""
이미지 배치 / 트리거 패턴 / 워터마크 명세 엔티티
"""

from dataclasses import dataclass, field
from typing import Dict, Any, Optional, Sequence, Tuple
from enum import Enum

import torch


class TriggerName(Enum):
    """트리거 유형"""
    WHITE_SQUARE = "white_square"
    TEST_LOGO = "test_logo"
    REVERSED = "reversed"


@dataclass
class ImageBatch:
    """이미지 배치 엔티티 (pixels: (N,C,H,W) [0,1], labels: (N,))"""
    pixels: torch.Tensor
    labels: torch.Tensor
    num_classes: int = 10

    def __post_init__(self):
        if self.pixels.dim() != 4:
            raise ValueError(f"pixels must be (N,C,H,W), got shape {tuple(self.pixels.shape)}")
        if self.labels.dim() != 1 or self.labels.shape[0] != self.pixels.shape[0]:
            raise ValueError("labels must be a vector with one entry per image")
        if self.pixels.shape[0] < 1:
            raise ValueError("an ImageBatch must hold at least one image")
        if not self.pixels.is_floating_point():
            raise ValueError("pixels must be a floating point tensor")
        if self.pixels.min().item() < 0.0 or self.pixels.max().item() > 1.0:
            raise ValueError("pixel values must lie in [0,1]")
        self.labels = self.labels.long()
        if self.labels.min().item() < 0 or self.labels.max().item() >= self.num_classes:
            raise ValueError(f"labels must lie in [0,{self.num_classes - 1}]")

    def __len__(self) -> int:
        return int(self.pixels.shape[0])

    @property
    def image_shape(self) -> Tuple[int, int, int]:
        return tuple(self.pixels.shape[1:])

    def subset(self, indices: torch.Tensor) -> 'ImageBatch':
        """인덱스로 부분 배치 생성"""
        return ImageBatch(self.pixels[indices], self.labels[indices], self.num_classes)

    def with_labels(self, labels: torch.Tensor) -> 'ImageBatch':
        """같은 이미지에 다른 라벨"""
        return ImageBatch(self.pixels, labels, self.num_classes)

    def where_label_not(self, label: int) -> 'ImageBatch':
        """특정 라벨을 제외한 배치"""
        keep = torch.nonzero(self.labels != label, as_tuple=False).squeeze(1)
        return self.subset(keep)

    def label_histogram(self) -> Dict[int, int]:
        counts = torch.bincount(self.labels, minlength=self.num_classes)
        return {i: int(c) for i, c in enumerate(counts.tolist())}

    @classmethod
    def concat(cls, batches: Sequence['ImageBatch']) -> 'ImageBatch':
        """여러 배치 연결"""
        return cls(
            torch.cat([b.pixels for b in batches], dim=0),
            torch.cat([b.labels for b in batches], dim=0),
            batches[0].num_classes
        )


@dataclass
class TriggerPattern:
    """트리거 패턴 엔티티 (stencil: (C,H,W) [0,1], mask: (C,H,W) {0,1})"""
    stencil: torch.Tensor
    mask: torch.Tensor
    name: TriggerName = TriggerName.WHITE_SQUARE
    metadata: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.stencil.shape != self.mask.shape or self.stencil.dim() != 3:
            raise ValueError("stencil and mask must both be (C,H,W) with equal shapes")
        self.mask = (self.mask > 0.5).to(self.stencil.dtype)
        self.stencil = self.stencil.clamp(0.0, 1.0) * self.mask

    @property
    def shape(self) -> Tuple[int, int, int]:
        return tuple(self.stencil.shape)

    @property
    def pixel_count(self) -> int:
        return int(self.mask.sum().item())

    @property
    def is_empty(self) -> bool:
        return self.pixel_count == 0

    def bounding_box(self) -> Optional[Tuple[int, int, int, int]]:
        """마스크의 (row0, row1, col0, col1) 반개구간, 비어 있으면 None"""
        spatial = self.mask.amax(dim=0)
        rows = torch.nonzero(spatial.amax(dim=1), as_tuple=False).squeeze(1)
        cols = torch.nonzero(spatial.amax(dim=0), as_tuple=False).squeeze(1)
        if rows.numel() == 0:
            return None
        return int(rows[0]), int(rows[-1]) + 1, int(cols[0]), int(cols[-1]) + 1

    def to_dict(self) -> Dict[str, Any]:
        """딕셔너리로 변환 (텐서 제외 요약)"""
        return {
            "name": self.name.value,
            "shape": list(self.shape),
            "pixel_count": self.pixel_count,
            "bounding_box": list(self.bounding_box()) if not self.is_empty else None,
            "metadata": self.metadata
        }

    def save(self, file_path: str) -> str:
        """텐서 포함 전체 저장"""
        torch.save({
            "name": self.name.value,
            "stencil": self.stencil.cpu(),
            "mask": self.mask.cpu(),
            "metadata": self.metadata
        }, file_path)
        return file_path

    @classmethod
    def load(cls, file_path: str) -> 'TriggerPattern':
        """저장된 트리거 로드"""
        data = torch.load(file_path, map_location='cpu')
        return cls(
            stencil=data["stencil"],
            mask=data["mask"],
            name=TriggerName(data["name"]),
            metadata=data.get("metadata", {})
        )


@dataclass
class WatermarkSpec:
    """워터마크 명세 엔티티"""
    trigger: TriggerPattern
    target_class: int = 7
    poison_rate: float = 0.05

    def __post_init__(self):
        if not 0.0 <= self.poison_rate <= 1.0:
            raise ValueError(f"poison_rate must lie in [0,1], got {self.poison_rate}")
        if self.target_class < 0:
            raise ValueError("target_class must be non-negative")

    def to_dict(self) -> Dict[str, Any]:
        """딕셔너리로 변환"""
        return {
            "trigger": self.trigger.to_dict(),
            "target_class": self.target_class,
            "poison_rate": self.poison_rate
        }

    def save(self, file_path: str) -> str:
        """트리거 텐서 포함 저장"""
        torch.save({
            "trigger": {
                "name": self.trigger.name.value,
                "stencil": self.trigger.stencil.cpu(),
                "mask": self.trigger.mask.cpu(),
                "metadata": self.trigger.metadata
            },
            "target_class": self.target_class,
            "poison_rate": self.poison_rate
        }, file_path)
        return file_path

    @classmethod
    def load(cls, file_path: str) -> 'WatermarkSpec':
        """저장된 명세 로드"""
        data = torch.load(file_path, map_location='cpu')
        trigger = data["trigger"]
        return cls(
            trigger=TriggerPattern(
                stencil=trigger["stencil"],
                mask=trigger["mask"],
                name=TriggerName(trigger["name"]),
                metadata=trigger.get("metadata", {})
            ),
            target_class=data["target_class"],
            poison_rate=data["poison_rate"]
        )

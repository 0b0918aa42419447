"""
데이터 서비스 구현 - 데이터셋 로드, 트리거 생성/스탬핑, 샘플링
"""

import os
import math
from typing import Optional, Tuple

import numpy as np
import torch
import torch.nn.functional as F
import torchvision

from ..IService import IDataService
from ..Entity import ImageBatch, TriggerPattern, TriggerName, WatermarkSpec
from ..Config import config, DATASET_SHAPES, DATASET_NUM_CLASSES, TriggerSection
from ..Utils import LoggerMixin, DatasetError, ShapeMismatchError, make_generator
from ..Utils.image_io import load_grayscale

# 3x5 비트맵 글꼴 ("TEST" 로고용)
_GLYPHS = {
    'T': ["111", "010", "010", "010", "010"],
    'E': ["111", "100", "111", "100", "111"],
    'S': ["111", "100", "111", "001", "111"],
}


def sample_size(n: int, rate: float) -> int:
    """ceil(rate * n), 부동소수점 오차 보정"""
    return int(math.ceil(round(rate * n, 9)))


def render_text_bitmap(text: str) -> torch.Tensor:
    """글리프 비트맵을 1열 간격으로 이어붙인 (5, W) 0/1 텐서"""
    columns = []
    for i, char in enumerate(text):
        glyph = torch.tensor([[int(b) for b in row] for row in _GLYPHS[char]], dtype=torch.float32)
        if i > 0:
            columns.append(torch.zeros(5, 1))
        columns.append(glyph)
    return torch.cat(columns, dim=1)


def _place(shape: Tuple[int, int, int], patch: torch.Tensor, margin: int, anchor: str) -> Tuple[int, int]:
    """anchor 기준 패치 좌상단 좌표"""
    _, height, width = shape
    ph, pw = patch.shape
    if ph + margin > height or pw + margin > width:
        raise ShapeMismatchError(f"trigger patch {ph}x{pw} with margin {margin} does not fit {height}x{width}")
    top = margin if anchor.startswith('top') else height - margin - ph
    left = margin if anchor.endswith('left') else width - margin - pw
    return top, left


class DataService(IDataService, LoggerMixin):
    """데이터 서비스 구현 클래스"""

    def __init__(self, data_dir: Optional[str] = None, download: Optional[bool] = None):
        self.data_dir = data_dir or config.runtime.data_dir
        self.download = config.runtime.download if download is None else download

    def load_dataset(self, name: str, split: str) -> ImageBatch:
        """데이터셋 분할 전체 로드"""
        if name not in DATASET_SHAPES:
            raise ValueError(f"unknown dataset '{name}', expected one of {sorted(DATASET_SHAPES)}")
        if split not in ('train', 'test'):
            raise ValueError(f"unknown split '{split}', expected train or test")

        train = split == 'train'
        if name == 'mnist':
            path = os.path.join(self.data_dir, 'MNIST', 'raw')
            dataset_cls = torchvision.datasets.MNIST
        else:
            path = os.path.join(self.data_dir, 'cifar-10-batches-py')
            dataset_cls = torchvision.datasets.CIFAR10

        try:
            dataset = dataset_cls(root=self.data_dir, train=train, download=self.download)
        except Exception as e:
            raise DatasetError(path, f"cannot load {name}/{split}: {e}") from e

        try:
            if name == 'mnist':
                # (N,28,28) uint8 -> (N,1,28,28)
                pixels = dataset.data.unsqueeze(1).float().div_(255.0)
                labels = torch.as_tensor(dataset.targets, dtype=torch.long)
            else:
                # (N,32,32,3) uint8 numpy -> (N,3,32,32)
                array = np.ascontiguousarray(np.transpose(dataset.data, (0, 3, 1, 2)))
                pixels = torch.from_numpy(array).float().div_(255.0)
                labels = torch.as_tensor(dataset.targets, dtype=torch.long)
        except Exception as e:
            raise DatasetError(path, f"corrupt {name}/{split} data: {e}") from e

        if tuple(pixels.shape[1:]) != DATASET_SHAPES[name]:
            raise DatasetError(path, f"unexpected image shape {tuple(pixels.shape[1:])}")

        self.logger.info(f"데이터셋 로드: {name}/{split} N={pixels.shape[0]}")
        return ImageBatch(pixels, labels, num_classes=DATASET_NUM_CLASSES[name])

    def build_trigger(self, section: TriggerSection, image_shape: Tuple[int, int, int]) -> TriggerPattern:
        """트리거 설정으로 스텐실/마스크 생성"""
        channels, height, width = image_shape

        if section.name == TriggerName.WHITE_SQUARE.value:
            side = section.side or int(math.ceil(height / 7))
            patch = torch.ones(side, side)
        else:
            if section.stencil_path:
                bitmap = (load_grayscale(section.stencil_path) > 0.5).float()
            else:
                bitmap = render_text_bitmap("TEST")
            logo_height = section.height or int(math.ceil(height / 3))
            aspect = bitmap.shape[1] / bitmap.shape[0]
            logo_width = min(int(round(logo_height * aspect)), width - 2 * section.margin)
            patch = F.interpolate(bitmap[None, None], size=(logo_height, logo_width), mode='nearest')[0, 0]

        top, left = _place(image_shape, patch, section.margin, section.anchor)
        mask = torch.zeros(image_shape)
        mask[:, top:top + patch.shape[0], left:left + patch.shape[1]] = patch.unsqueeze(0).expand(channels, -1, -1)
        if mask.sum() == 0:
            raise ShapeMismatchError("trigger occupies no pixels")
        stencil = mask * section.value

        trigger = TriggerPattern(
            stencil=stencil,
            mask=mask,
            name=TriggerName(section.name),
            metadata={"anchor": section.anchor, "margin": section.margin,
                      "top": top, "left": left, "patch_shape": list(patch.shape)}
        )
        self.logger.debug(f"트리거 생성: {trigger.to_dict()}")
        return trigger

    def stamp(self, batch: ImageBatch, trigger: TriggerPattern) -> ImageBatch:
        """mask*stencil + (1-mask)*input, [0,1] 클리핑"""
        if tuple(trigger.shape) != tuple(batch.image_shape):
            raise ShapeMismatchError(
                f"trigger shape {tuple(trigger.shape)} does not match images {tuple(batch.image_shape)}")
        stencil = trigger.stencil.to(batch.pixels.device, batch.pixels.dtype)
        mask = trigger.mask.to(batch.pixels.device).bool()
        pixels = torch.where(mask.unsqueeze(0), stencil.unsqueeze(0), batch.pixels).clamp(0.0, 1.0)
        return ImageBatch(pixels, batch.labels.clone(), batch.num_classes)

    def make_watermark_set(self, train: ImageBatch, spec: WatermarkSpec, seed: int) -> ImageBatch:
        """ceil(poison_rate*N) 개 샘플 스탬핑 + 대상 클래스 라벨"""
        if train is None or len(train) == 0:
            raise ValueError("cannot build a watermark set from an empty training batch")
        if not 0.0 < spec.poison_rate <= 1.0:
            raise ValueError(f"poison_rate must lie in (0,1], got {spec.poison_rate}")
        if not 0 <= spec.target_class < train.num_classes:
            raise ValueError(f"target_class {spec.target_class} out of range")

        count = sample_size(len(train), spec.poison_rate)
        indices = torch.randperm(len(train), generator=make_generator(seed))[:count]
        stamped = self.stamp(train.subset(indices), spec.trigger)
        labels = torch.full((count,), spec.target_class, dtype=torch.long)

        self.logger.info(f"워터마크 트리거 세트 생성: {count}개, 대상 클래스 {spec.target_class}")
        return stamped.with_labels(labels)

    def subsample(self, train: ImageBatch, fraction: float, seed: int) -> ImageBatch:
        """ceil(fraction*N) 개 비복원 균등 샘플"""
        if not 0.0 < fraction <= 1.0:
            raise ValueError(f"fraction must lie in (0,1], got {fraction}")
        count = sample_size(len(train), fraction)
        indices = torch.randperm(len(train), generator=make_generator(seed))[:count]
        return train.subset(indices)

    def limit(self, batch: ImageBatch, max_items: Optional[int], seed: int) -> ImageBatch:
        """최대 개수로 잘라낸 시드 고정 부분 집합 (축소 규모 실험용)"""
        if max_items is None or max_items >= len(batch):
            return batch
        indices = torch.randperm(len(batch), generator=make_generator(seed))[:max_items]
        self.logger.info(f"학습 데이터 축소: {len(batch)} -> {max_items}")
        return batch.subset(indices)

    def attacker_set(self, batch: ImageBatch, size: int, seed: int) -> ImageBatch:
        """공격자가 보유한 소량의 깨끗한 이미지"""
        size = min(size, len(batch))
        indices = torch.randperm(len(batch), generator=make_generator(seed))[:size]
        return batch.subset(indices)

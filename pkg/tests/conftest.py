"""
공용 pytest 픽스처: 합성 이미지 배치, 고정 로짓 모델, 조용한 UI, 가짜 데이터 서비스
"""

import os
import sys
from typing import List

import pytest
import torch
import torch.nn as nn

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from src.Entity import ImageBatch  # noqa: E402
from src.IService import IUIService  # noqa: E402
from src.Service import DataService  # noqa: E402


def make_batch(n: int = 20, shape=(1, 28, 28), num_classes: int = 10, seed: int = 0) -> ImageBatch:
    generator = torch.Generator().manual_seed(seed)
    pixels = torch.rand((n,) + tuple(shape), generator=generator)
    labels = torch.arange(n) % num_classes
    return ImageBatch(pixels, labels, num_classes)


class ConstantModel(nn.Module):
    """입력과 무관하게 같은 로짓을 내는 모델"""

    def __init__(self, logits: torch.Tensor):
        super().__init__()
        self.register_buffer('logits', logits.float())
        self.num_classes = logits.shape[0]

    def forward(self, x: torch.Tensor) -> torch.Tensor:
        return self.logits.to(x.device).unsqueeze(0).expand(x.shape[0], -1)


class PixelCodeModel(nn.Module):
    """좌상단 픽셀 값에 라벨을 인코딩한 이미지를 그대로 읽는 모델 (pixel = label / 10)"""

    num_classes = 10

    def forward(self, x: torch.Tensor) -> torch.Tensor:
        labels = torch.round(x[:, 0, 0, 0] * 10).long().clamp(0, 9)
        return nn.functional.one_hot(labels, 10).float() * 5.0


class QuietUI(IUIService):
    """메시지를 기록만 하는 UI"""

    def __init__(self):
        self.messages: List[tuple] = []

    def _log(self, kind, message=None):
        self.messages.append((kind, message))

    def display_banner(self, command, run_dir):
        self._log("banner", command)

    def display_error(self, error_message):
        self._log("error", error_message)

    def display_success(self, success_message):
        self._log("success", success_message)

    def display_warning(self, warning_message):
        self._log("warning", warning_message)

    def display_info(self, info_message):
        self._log("info", info_message)

    def start_task(self, description, total):
        self._log("task", description)

    def advance_task(self, status=""):
        pass

    def finish_task(self):
        pass

    def display_detection(self, report, table):
        self._log("detection", report.detected_class)

    def display_evaluation(self, report):
        self._log("evaluation", report.to_dict())

    def display_sweep(self, table):
        self._log("sweep", table.to_dict())

    def display_manifest(self, manifest):
        self._log("manifest", manifest.run_dir)

    def kinds(self, kind):
        return [m for k, m in self.messages if k == kind]


class FakeDataService(DataService):
    """다운로드 없이 합성 MNIST 형태 데이터를 돌려주는 데이터 서비스"""

    def __init__(self, train_size: int = 300, test_size: int = 100):
        super().__init__(data_dir="unused", download=False)
        self.sizes = {'train': train_size, 'test': test_size}

    def load_dataset(self, name, split):
        shape = (1, 28, 28) if name == 'mnist' else (3, 32, 32)
        return make_batch(self.sizes[split], shape, seed=1 if split == 'train' else 2)


@pytest.fixture
def mnist_batch() -> ImageBatch:
    return make_batch(20)


@pytest.fixture
def quiet_ui() -> QuietUI:
    return QuietUI()


@pytest.fixture
def data_service() -> DataService:
    return DataService(data_dir="unused", download=False)

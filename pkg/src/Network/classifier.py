"""
분류기 래퍼: 데이터셋별 정규화를 모델 내부에 포함
"""

from typing import Sequence, Tuple

import torch
import torch.nn as nn

from .lenet import LeNet5
from .resnet import ResNet18

NORMALIZATION = {
    'lenet5': ((0.1307,), (0.3081,)),
    'resnet18': ((0.4914, 0.4822, 0.4465), (0.2470, 0.2435, 0.2616)),
}
INPUT_SHAPES = {
    'lenet5': (1, 28, 28),
    'resnet18': (3, 32, 32),
}


class Classifier(nn.Module):
    """[0,1] 픽셀 입력 -> 정규화 -> 백본 -> 로짓 (N, num_classes)"""

    def __init__(
        self,
        architecture: str,
        backbone: nn.Module,
        num_classes: int,
        input_shape: Tuple[int, int, int],
        mean: Sequence[float],
        std: Sequence[float]
    ):
        super().__init__()
        self.architecture = architecture
        self.num_classes = num_classes
        self.input_shape = tuple(input_shape)
        self.backbone = backbone
        self.register_buffer('mean', torch.tensor(mean, dtype=torch.float32).view(1, -1, 1, 1))
        self.register_buffer('std', torch.tensor(std, dtype=torch.float32).view(1, -1, 1, 1))

    def forward(self, x: torch.Tensor) -> torch.Tensor:
        return self.backbone((x - self.mean) / self.std)


def create_classifier(architecture: str, num_classes: int = 10) -> Classifier:
    """구조 이름으로 새 분류기 생성 (가중치 초기화는 호출 측 시드에 따름)"""
    if architecture == 'lenet5':
        backbone = LeNet5(num_classes=num_classes, in_channels=1)
    elif architecture == 'resnet18':
        backbone = ResNet18(num_classes=num_classes, in_channels=3)
    else:
        raise KeyError(architecture)
    mean, std = NORMALIZATION[architecture]
    return Classifier(architecture, backbone, num_classes, INPUT_SHAPES[architecture], mean, std)

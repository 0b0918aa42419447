"""
섭동 생성기 / 판별자

생성기: 인코더-디코더 (다운샘플 합성곱 3개, 잔차 블록 4개, 업샘플 3개)
출력은 tanh * eps_max 로 포화되어 |G(x)| <= eps_max 를 보장한다.
판별자: stride-2 합성곱 블록 3개 + 시그모이드 스칼라 출력.
"""

import torch
import torch.nn as nn


class _ResnetBlock(nn.Module):
    def __init__(self, channels: int):
        super().__init__()
        self.block = nn.Sequential(
            nn.ReflectionPad2d(1),
            nn.Conv2d(channels, channels, kernel_size=3, bias=False),
            nn.InstanceNorm2d(channels),
            nn.ReLU(inplace=True),
            nn.ReflectionPad2d(1),
            nn.Conv2d(channels, channels, kernel_size=3, bias=False),
            nn.InstanceNorm2d(channels),
        )

    def forward(self, x: torch.Tensor) -> torch.Tensor:
        return x + self.block(x)


class PerturbationGenerator(nn.Module):
    """이미지 -> 같은 형태의 유계 섭동"""

    def __init__(self, in_channels: int = 1, eps_max: float = 1.0, base_channels: int = 8,
                 num_residual: int = 4):
        super().__init__()
        self.eps_max = float(eps_max)
        c = base_channels

        # 다운샘플: HxW -> HxW -> H/2 -> H/4
        self.encoder = nn.Sequential(
            nn.Conv2d(in_channels, c, kernel_size=3, stride=1, padding=1, bias=True),
            nn.InstanceNorm2d(c),
            nn.ReLU(inplace=True),
            nn.Conv2d(c, 2 * c, kernel_size=3, stride=2, padding=1, bias=True),
            nn.InstanceNorm2d(2 * c),
            nn.ReLU(inplace=True),
            nn.Conv2d(2 * c, 4 * c, kernel_size=3, stride=2, padding=1, bias=True),
            nn.InstanceNorm2d(4 * c),
            nn.ReLU(inplace=True),
        )
        self.bottleneck = nn.Sequential(*[_ResnetBlock(4 * c) for _ in range(num_residual)])
        # 업샘플: H/4 -> H/2 -> H -> H
        self.decoder = nn.Sequential(
            nn.ConvTranspose2d(4 * c, 2 * c, kernel_size=3, stride=2, padding=1, output_padding=1, bias=False),
            nn.InstanceNorm2d(2 * c),
            nn.ReLU(inplace=True),
            nn.ConvTranspose2d(2 * c, c, kernel_size=3, stride=2, padding=1, output_padding=1, bias=False),
            nn.InstanceNorm2d(c),
            nn.ReLU(inplace=True),
            nn.Conv2d(c, in_channels, kernel_size=3, stride=1, padding=1, bias=False),
        )

    def forward(self, x: torch.Tensor) -> torch.Tensor:
        out = self.decoder(self.bottleneck(self.encoder(x)))
        return self.eps_max * torch.tanh(out)


class Discriminator(nn.Module):
    """이미지 -> [0,1] 실제 이미지 점수 (N,)"""

    def __init__(self, in_channels: int = 1, base_channels: int = 8):
        super().__init__()
        c = base_channels
        self.features = nn.Sequential(
            nn.Conv2d(in_channels, c, kernel_size=4, stride=2, padding=1, bias=True),
            nn.LeakyReLU(0.2, inplace=True),
            nn.Conv2d(c, 2 * c, kernel_size=4, stride=2, padding=1, bias=True),
            nn.InstanceNorm2d(2 * c),
            nn.LeakyReLU(0.2, inplace=True),
            nn.Conv2d(2 * c, 4 * c, kernel_size=4, stride=2, padding=1, bias=True),
            nn.InstanceNorm2d(4 * c),
            nn.LeakyReLU(0.2, inplace=True),
        )
        self.head = nn.Sequential(
            nn.AdaptiveAvgPool2d(1),
            nn.Flatten(),
            nn.Linear(4 * c, 1),
            nn.Sigmoid(),
        )

    def forward(self, x: torch.Tensor) -> torch.Tensor:
        return self.head(self.features(x)).squeeze(1)

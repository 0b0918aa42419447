"""
트리거 역추적 GAN 의 손실 함수

- loss_gan: 판별자 최소제곱 손실  MSE(D(x), 1) + MSE(D(x'), 0)
- loss_wm: 가정 클래스 c 로 향하는 로짓 마진 손실  max(max_{i!=c} z_i - z_c, 0)
- loss_pert: 이미지별 섭동 L2 노름의 배치 평균
- generator_objective: lambda1*L_wm + lambda2*L_pert + 생성기 측 GAN 항
"""

from typing import Dict, Optional, Tuple, Union

import torch
import torch.nn.functional as F

from ..Entity import GanLossWeights

Score = Union[float, torch.Tensor]


def loss_gan(d_real: Score, d_fake: Score) -> torch.Tensor:
    """판별자 손실, d_real=1 / d_fake=0 에서 최소"""
    d_real = torch.as_tensor(d_real, dtype=torch.get_default_dtype())
    d_fake = torch.as_tensor(d_fake, dtype=torch.get_default_dtype())
    return (F.mse_loss(d_real, torch.ones_like(d_real))
            + F.mse_loss(d_fake, torch.zeros_like(d_fake)))


def _as_batch(logits: torch.Tensor) -> torch.Tensor:
    if logits.dim() == 1:
        return logits.unsqueeze(0)
    if logits.dim() != 2:
        raise ValueError(f"logits must be (K,) or (N,K), got shape {tuple(logits.shape)}")
    if logits.shape[1] < 2:
        raise ValueError("at least two classes are required")
    return logits


def margin_to_class(logits: torch.Tensor, assumed_class: int) -> torch.Tensor:
    """샘플별 max(max_{i!=c} z_i - z_c, 0), 동점이면 0"""
    logits = _as_batch(logits)
    num_classes = logits.shape[1]
    if not 0 <= assumed_class < num_classes:
        raise ValueError(f"assumed_class {assumed_class} out of range [0,{num_classes - 1}]")

    target = logits[:, assumed_class]
    others = logits.clone()
    others[:, assumed_class] = float('-inf')
    return torch.clamp(others.max(dim=1).values - target, min=0.0)


def loss_wm(logits: torch.Tensor, assumed_class: int) -> torch.Tensor:
    """표적형 워터마크 손실 (배치 평균)"""
    return margin_to_class(logits, assumed_class).mean()


def loss_wm_untargeted(logits: torch.Tensor, true_labels: torch.Tensor) -> torch.Tensor:
    """비표적형 워터마크 손실: 참 클래스 t 에서 멀어지도록 max(z_t - max_{i!=t} z_i, 0)"""
    logits = _as_batch(logits)
    true_labels = torch.as_tensor(true_labels, device=logits.device).long().view(-1)
    if true_labels.shape[0] != logits.shape[0]:
        raise ValueError("one true label per row of logits is required")

    own = logits.gather(1, true_labels.unsqueeze(1)).squeeze(1)
    others = logits.scatter(1, true_labels.unsqueeze(1), float('-inf'))
    return torch.clamp(own - others.max(dim=1).values, min=0.0).mean()


def per_image_l2(perturbation: torch.Tensor) -> torch.Tensor:
    """(N, ...) 섭동의 이미지별 L2 노름 (N,)"""
    if perturbation.dim() <= 1:
        perturbation = perturbation.reshape(1, -1)
    return torch.linalg.vector_norm(perturbation.flatten(1), ord=2, dim=1)


def loss_pert(perturbation: torch.Tensor) -> torch.Tensor:
    """이미지별 L2 노름의 배치 평균"""
    return per_image_l2(perturbation).mean()


def discriminator_accuracy(d_real: torch.Tensor, d_fake: torch.Tensor) -> float:
    """0.5 기준 판별 정확도"""
    correct = (d_real > 0.5).sum() + (d_fake < 0.5).sum()
    return float(correct.item()) / float(d_real.numel() + d_fake.numel())


def generator_objective(
    logits: torch.Tensor,
    perturbation: torch.Tensor,
    d_fake: torch.Tensor,
    assumed_class: int,
    weights: GanLossWeights,
    targeted: bool = True,
    true_labels: Optional[torch.Tensor] = None
) -> Tuple[torch.Tensor, Dict[str, float]]:
    """생성기 결합 손실과 항목별 값"""
    if targeted:
        wm = loss_wm(logits, assumed_class)
    else:
        if true_labels is None:
            raise ValueError("untargeted watermark loss needs the true labels")
        wm = loss_wm_untargeted(logits, true_labels)
    pert = loss_pert(perturbation)
    adv = F.mse_loss(d_fake, torch.ones_like(d_fake))

    total = weights.lambda1 * wm + weights.lambda2 * pert + adv
    parts = {"wm": float(wm.item()), "pert": float(pert.item()), "adv": float(adv.item())}
    return total, parts

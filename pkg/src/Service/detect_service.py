"""
워터마크 탐지 서비스 구현

가정 클래스마다 새 생성기/판별자를 학습하여 고정된 대상 모델을
그 클래스로 유도하는 최소 섭동을 찾고, 섭동 크기가 임계값 T 보다
작은 클래스를 워터마크 대상 클래스로 판정한다.
"""

import os
import math
import threading
from concurrent.futures import ThreadPoolExecutor
from typing import List, Optional, Tuple

import torch
import torch.nn as nn
from torch.utils.data import DataLoader, TensorDataset

from ..IService import IDetectService, ClassCallback
from ..Entity import (
    ImageBatch,
    GanLossWeights,
    ReverseResult,
    DetectionReport,
    TriggerPattern,
    TriggerName
)
from ..Config import DetectSection
from ..Network import PerturbationGenerator, Discriminator
from ..Utils import LoggerMixin, GanDivergenceError, WmForgeError, make_generator
from ..Utils.image_io import save_png
from .gan_losses import loss_gan, generator_objective, per_image_l2, discriminator_accuracy
from .model_service import model_device

# 공격자가 가진 "소수의 깨끗한 이미지" 상한
MAX_ATTACKER_IMAGES = 1000


def job_seed(seed: int, assumed_class: int) -> int:
    """클래스별 작업 시드"""
    return seed * 1000 + assumed_class


def freeze(model: nn.Module) -> nn.Module:
    """대상 모델 파라미터 고정 (입력에 대한 그래디언트만 흐름)"""
    model.eval()
    for parameter in model.parameters():
        parameter.requires_grad_(False)
    return model


def split_holdout(batch: ImageBatch, fraction: float, seed: int) -> Tuple[ImageBatch, ImageBatch]:
    """학습용 / 섭동 크기 측정용 분할"""
    if len(batch) < 2:
        raise ValueError("at least two attacker images are needed to hold out a measurement slice")
    holdout_count = min(max(1, int(round(len(batch) * fraction))), len(batch) - 1)
    order = torch.randperm(len(batch), generator=make_generator(seed))
    return batch.subset(order[holdout_count:]), batch.subset(order[:holdout_count])


def trigger_from_perturbation(
    image: torch.Tensor,
    perturbation: torch.Tensor,
    mask_threshold: float,
    metadata: dict
) -> TriggerPattern:
    """밀집 섭동 -> 스탬핑 가능한 트리거 (|p| > threshold*max(|p|) 인 픽셀)"""
    magnitude = perturbation.abs()
    peak = float(magnitude.max().item())
    if peak > 0:
        mask = (magnitude > mask_threshold * peak).to(image.dtype)
    else:
        mask = torch.zeros_like(image)
    stencil = (image + perturbation).clamp(0.0, 1.0) * mask
    return TriggerPattern(stencil=stencil, mask=mask, name=TriggerName.REVERSED, metadata=metadata)


class DetectService(IDetectService, LoggerMixin):
    """워터마크 탐지 서비스 구현 클래스"""

    def __init__(self):
        # 전역 난수 상태를 건드리는 네트워크 초기화는 한 번에 하나씩
        self._init_lock = threading.Lock()

    def _build_networks(self, channels: int, cfg: DetectSection, seed: int) -> Tuple[nn.Module, nn.Module]:
        with self._init_lock:
            with torch.random.fork_rng(devices=[]):
                torch.manual_seed(seed)
                generator = PerturbationGenerator(in_channels=channels, eps_max=cfg.eps_max)
                discriminator = Discriminator(in_channels=channels)
        return generator, discriminator

    def reverse_for_class(
        self,
        target_model: nn.Module,
        clean: ImageBatch,
        assumed_class: int,
        weights: GanLossWeights,
        cfg: DetectSection,
        seed: int = 0,
        out_dir: Optional[str] = None
    ) -> ReverseResult:
        """가정 클래스 하나에 대한 생성기/판별자 교대 학습"""
        if len(clean) > MAX_ATTACKER_IMAGES:
            raise ValueError(f"attacker set holds {len(clean)} images, at most {MAX_ATTACKER_IMAGES} are allowed")
        num_classes = getattr(target_model, 'num_classes', clean.num_classes)
        if not 0 <= assumed_class < num_classes:
            raise ValueError(f"assumed_class {assumed_class} out of range [0,{num_classes - 1}]")

        freeze(target_model)

        # 이미 c 로 라벨된 이미지는 L_wm 에 기여하지 않으므로 제외
        candidates = clean.where_label_not(assumed_class)
        train_set, holdout = split_holdout(candidates, cfg.holdout_fraction, job_seed(seed, assumed_class))

        device = model_device(target_model)
        generator, discriminator = self._build_networks(candidates.image_shape[0], cfg, job_seed(seed, assumed_class))
        generator.to(device)
        discriminator.to(device)
        optimizer_g = torch.optim.Adam(generator.parameters(), lr=cfg.generator_lr, betas=(0.5, 0.999))
        optimizer_d = torch.optim.Adam(discriminator.parameters(), lr=cfg.discriminator_lr, betas=(0.5, 0.999))

        loader = DataLoader(
            TensorDataset(train_set.pixels, train_set.labels),
            batch_size=cfg.batch_size,
            shuffle=True,
            generator=make_generator(job_seed(seed, assumed_class))
        )
        targeted = cfg.wm_loss == 'targeted'
        max_pinned = cfg.max_pinned_fraction * cfg.epochs
        pinned_epochs = 0

        for epoch in range(1, cfg.epochs + 1):
            generator.train()
            discriminator.train()
            epoch_pinned = True
            parts = {}
            for images, labels in loader:
                images = images.to(device)
                labels = labels.to(device)

                # 판별자: 원본은 1, 섭동 이미지는 0
                perturbed = (images + generator(images)).clamp(0.0, 1.0).detach()
                d_real = discriminator(images)
                d_fake = discriminator(perturbed)
                d_loss = loss_gan(d_real, d_fake)
                optimizer_d.zero_grad()
                d_loss.backward()
                optimizer_d.step()
                if discriminator_accuracy(d_real.detach(), d_fake.detach()) < 1.0:
                    epoch_pinned = False

                # 생성기: lambda1*L_wm + lambda2*L_pert + MSE(D(x'), 1)
                perturbation = generator(images)
                perturbed = (images + perturbation).clamp(0.0, 1.0)
                g_loss, parts = generator_objective(
                    target_model(perturbed),
                    perturbation,
                    discriminator(perturbed),
                    assumed_class,
                    weights,
                    targeted=targeted,
                    true_labels=labels
                )
                optimizer_g.zero_grad()
                g_loss.backward()
                optimizer_g.step()

                if not (math.isfinite(float(d_loss.item())) and math.isfinite(float(g_loss.item()))):
                    raise GanDivergenceError(assumed_class, f"NaN loss at epoch {epoch}")

            if epoch_pinned:
                pinned_epochs += 1
                if pinned_epochs > max_pinned:
                    raise GanDivergenceError(
                        assumed_class,
                        f"discriminator accuracy pinned at 1.0 in {pinned_epochs} of {cfg.epochs} epochs")
            self.logger.debug(f"class {assumed_class} epoch {epoch}/{cfg.epochs}: {parts}")

        result = self._measure(target_model, generator, train_set, holdout, assumed_class, cfg)
        if out_dir:
            self._write_artifacts(result, generator, out_dir)
        self.logger.info(
            f"클래스 {assumed_class}: 섭동 크기 {result.mean_pert_size:.4f}, "
            f"공격 성공률 {result.attack_success_rate:.4f}")
        return result

    @torch.no_grad()
    def _perturb(self, target_model: nn.Module, generator: nn.Module, batch: ImageBatch, assumed_class: int):
        generator.eval()
        device = model_device(target_model)
        images = batch.pixels.to(device)
        perturbations = generator(images)
        predictions = target_model((images + perturbations).clamp(0.0, 1.0)).argmax(dim=1)
        return images.cpu(), perturbations.cpu(), (predictions == assumed_class).cpu()

    def _measure(
        self,
        target_model: nn.Module,
        generator: nn.Module,
        train_set: ImageBatch,
        holdout: ImageBatch,
        assumed_class: int,
        cfg: DetectSection
    ) -> ReverseResult:
        """홀드아웃 평균 섭동 크기와 최소 섭동 트리거"""
        _, held_perturbations, held_hits = self._perturb(target_model, generator, holdout, assumed_class)
        mean_pert_size = float(per_image_l2(held_perturbations).mean().item())
        success_rate = float(held_hits.double().mean().item())

        # 최종 생성기가 만든 후보 중 대상 클래스에 도달한 것 (없으면 전체) 의 최소 섭동
        pool = ImageBatch.concat([train_set, holdout])
        images, perturbations, hits = self._perturb(target_model, generator, pool, assumed_class)
        sizes = per_image_l2(perturbations)
        eligible = torch.nonzero(hits, as_tuple=False).squeeze(1)
        if eligible.numel() == 0:
            eligible = torch.arange(len(pool))
        best = int(eligible[sizes[eligible].argmin()].item())

        trigger = trigger_from_perturbation(
            images[best],
            perturbations[best],
            cfg.mask_threshold,
            metadata={
                "assumed_class": assumed_class,
                "pert_size": float(sizes[best].item()),
                "reached_class": bool(hits[best].item()),
                "mask_threshold": cfg.mask_threshold
            }
        )
        return ReverseResult(
            assumed_class=assumed_class,
            mean_pert_size=mean_pert_size,
            best_trigger=trigger,
            attack_success_rate=success_rate,
            best_perturbation=perturbations[best]
        )

    def _write_artifacts(self, result: ReverseResult, generator: nn.Module, out_dir: str) -> None:
        os.makedirs(out_dir, exist_ok=True)
        c = result.assumed_class
        result.generator_ckpt = os.path.join(out_dir, f"generator_class{c}.pt")
        torch.save({k: v.detach().cpu() for k, v in generator.state_dict().items()}, result.generator_ckpt)
        result.trigger_path = result.best_trigger.save(os.path.join(out_dir, f"trigger_class{c}.pt"))
        result.trigger_png_path = save_png(result.best_trigger.stencil, os.path.join(out_dir, f"trigger_class{c}.png"),
                                           scale=4)
        result.perturbation_path = os.path.join(out_dir, f"perturbation_class{c}.pt")
        torch.save(result.best_perturbation.detach().cpu(), result.perturbation_path)
        perturbation = result.best_perturbation.abs()
        peak = float(perturbation.max().item())
        if peak > 0:
            save_png(perturbation / peak, os.path.join(out_dir, f"perturbation_class{c}.png"), scale=4)

    def _safe_reverse(self, target_model, clean, assumed_class, weights, cfg, seed, out_dir) -> ReverseResult:
        """실패해도 나머지 클래스는 계속 진행"""
        try:
            return self.reverse_for_class(target_model, clean, assumed_class, weights, cfg, seed, out_dir)
        except (WmForgeError, ValueError, RuntimeError) as e:
            self.logger.error(f"클래스 {assumed_class} 역추적 실패: {e}")
            return ReverseResult(assumed_class=assumed_class, error=str(e))

    def detect_watermark(
        self,
        target_model: nn.Module,
        clean: ImageBatch,
        threshold_T: float,
        weights: GanLossWeights,
        cfg: DetectSection,
        seed: int = 0,
        out_dir: Optional[str] = None,
        on_class: Optional[ClassCallback] = None
    ) -> DetectionReport:
        """0..K-1 모든 클래스 열거 후 임계값 판정"""
        freeze(target_model)
        num_classes = getattr(target_model, 'num_classes', clean.num_classes)
        classes = list(range(num_classes))
        results: List[ReverseResult] = []

        if cfg.workers > 1:
            with ThreadPoolExecutor(max_workers=cfg.workers) as executor:
                futures = [executor.submit(self._safe_reverse, target_model, clean, c, weights, cfg, seed, out_dir)
                           for c in classes]
                for future in futures:
                    result = future.result()
                    results.append(result)
                    if on_class:
                        on_class(result)
        else:
            for c in classes:
                result = self._safe_reverse(target_model, clean, c, weights, cfg, seed, out_dir)
                results.append(result)
                if on_class:
                    on_class(result)

        report = DetectionReport.decide(results, threshold_T, weights, seed)
        self.logger.info(
            f"탐지 결과: detected={report.detected} class={report.detected_class} "
            f"incomplete={report.incomplete_classes}")
        return report

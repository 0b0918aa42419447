"""
모델 서비스 구현 - 분류기 생성, 학습, 예측, 체크포인트
"""

import os
from typing import Optional, Tuple

import torch
import torch.nn as nn
import torch.nn.functional as F
from torch.utils.data import DataLoader, TensorDataset

from ..IService import IModelService, EpochCallback
from ..Entity import ImageBatch, TrainConfig, TrainHistory, OptimizerType
from ..Network import create_classifier, INPUT_SHAPES
from ..Config import config
from ..Utils import (
    LoggerMixin,
    CheckpointError,
    ShapeMismatchError,
    TrainingDivergedError,
    make_generator,
    resolve_device
)

# 체크포인트 헤더 형식 버전
FORMAT_VERSION = 1


def model_device(model: nn.Module) -> torch.device:
    """모델 파라미터가 있는 장치 (파라미터가 없으면 CPU)"""
    for tensor in list(model.parameters()) + list(model.buffers()):
        return tensor.device
    return torch.device('cpu')


def check_input_shape(model: nn.Module, batch: ImageBatch) -> None:
    """모델이 input_shape 를 알고 있으면 배치 형태와 비교"""
    expected = getattr(model, 'input_shape', None)
    if expected is not None and tuple(expected) != tuple(batch.image_shape):
        raise ShapeMismatchError(
            f"model expects input {tuple(expected)}, got images of shape {tuple(batch.image_shape)}")


def build_optimizer(parameters, cfg: TrainConfig) -> torch.optim.Optimizer:
    if cfg.optimizer == OptimizerType.SGD:
        return torch.optim.SGD(parameters, lr=cfg.learning_rate, momentum=0.9)
    return torch.optim.Adam(parameters, lr=cfg.learning_rate)


class ModelService(IModelService, LoggerMixin):
    """모델 서비스 구현 클래스"""

    def __init__(self, device: Optional[str] = None, num_workers: Optional[int] = None):
        self.device = resolve_device(device or config.runtime.device)
        self.num_workers = config.runtime.num_workers if num_workers is None else num_workers

    def build_classifier(self, architecture: str, seed: int = 0, num_classes: int = 10) -> nn.Module:
        """시드 고정 초기화 (전역 난수 상태는 보존)"""
        if architecture not in INPUT_SHAPES:
            raise ValueError(f"unknown architecture '{architecture}', expected one of {sorted(INPUT_SHAPES)}")
        with torch.random.fork_rng(devices=[]):
            torch.manual_seed(seed)
            model = create_classifier(architecture, num_classes=num_classes)
        self.logger.debug(f"분류기 생성: {architecture} (seed={seed})")
        return model

    def train_classifier(
        self,
        model: nn.Module,
        data: ImageBatch,
        cfg: TrainConfig,
        on_epoch: Optional[EpochCallback] = None
    ) -> Tuple[nn.Module, TrainHistory]:
        """교차 엔트로피 학습 (모델을 제자리에서 갱신)"""
        history = TrainHistory()
        if len(data) == 0:
            raise ValueError("training data must not be empty")
        check_input_shape(model, data)
        if cfg.epochs == 0:
            return model, history

        model.to(self.device)
        loader = DataLoader(
            TensorDataset(data.pixels, data.labels),
            batch_size=cfg.batch_size,
            shuffle=True,
            generator=make_generator(cfg.seed),
            num_workers=self.num_workers
        )
        optimizer = build_optimizer(model.parameters(), cfg)

        for epoch in range(1, cfg.epochs + 1):
            model.train()
            total_loss, correct, seen = 0.0, 0, 0
            for images, labels in loader:
                images = images.to(self.device)
                labels = labels.to(self.device)

                logits = model(images)
                loss = F.cross_entropy(logits, labels)
                if not torch.isfinite(loss):
                    raise TrainingDivergedError(epoch, float(loss.item()))

                optimizer.zero_grad()
                loss.backward()
                optimizer.step()

                total_loss += float(loss.item()) * labels.shape[0]
                correct += int((logits.argmax(dim=1) == labels).sum().item())
                seen += labels.shape[0]

            epoch_loss = total_loss / seen
            epoch_accuracy = correct / seen
            history.record(epoch_loss, epoch_accuracy)
            self.logger.info(f"에폭 {epoch}/{cfg.epochs}: loss={epoch_loss:.4f} acc={epoch_accuracy:.4f}")
            if on_epoch:
                on_epoch(epoch, cfg.epochs, epoch_loss, epoch_accuracy)

        model.eval()
        return model, history

    def predict(
        self,
        model: nn.Module,
        batch: ImageBatch,
        batch_size: int = 512
    ) -> Tuple[torch.Tensor, torch.Tensor]:
        """평가 모드, 그래디언트 없이 배치 단위 예측 (CPU 텐서 반환)"""
        check_input_shape(model, batch)
        device = model_device(model)
        model.eval()

        outputs = []
        with torch.no_grad():
            for start in range(0, len(batch), batch_size):
                images = batch.pixels[start:start + batch_size].to(device)
                try:
                    outputs.append(model(images).detach().cpu())
                except RuntimeError as e:
                    raise ShapeMismatchError(f"forward pass failed for images {tuple(batch.image_shape)}: {e}") from e

        logits = torch.cat(outputs, dim=0)
        if logits.dim() != 2 or logits.shape[0] != len(batch):
            raise ShapeMismatchError(f"model returned logits of shape {tuple(logits.shape)}")
        return logits, logits.argmax(dim=1)

    def save_checkpoint(self, model: nn.Module, path: str, seed: int = 0) -> str:
        """헤더 {format_version, architecture, num_classes, seed} + state_dict"""
        architecture = getattr(model, 'architecture', None)
        if architecture is None:
            raise CheckpointError("only classifiers built by ModelService can be checkpointed")

        directory = os.path.dirname(path)
        if directory:
            os.makedirs(directory, exist_ok=True)
        payload = {
            "header": {
                "format_version": FORMAT_VERSION,
                "architecture": architecture,
                "num_classes": int(model.num_classes),
                "seed": int(seed),
                "input_shape": list(model.input_shape)
            },
            "state_dict": {k: v.detach().cpu() for k, v in model.state_dict().items()}
        }
        torch.save(payload, path)
        self.logger.debug(f"체크포인트 저장: {path}")
        return path

    def read_header(self, path: str) -> dict:
        """체크포인트 헤더만 읽기"""
        return self._read(path)["header"]

    def _read(self, path: str) -> dict:
        if not os.path.exists(path):
            raise FileNotFoundError(path)
        try:
            payload = torch.load(path, map_location='cpu')
        except Exception as e:
            raise CheckpointError(f"cannot read checkpoint {path}: {e}") from e
        if not isinstance(payload, dict) or "header" not in payload or "state_dict" not in payload:
            raise CheckpointError(f"{path} is not a wmforge checkpoint")
        return payload

    def load_checkpoint(self, path: str, expected_architecture: Optional[str] = None) -> nn.Module:
        """헤더 검증 후 분류기 복원"""
        payload = self._read(path)
        header = payload["header"]

        version = header.get("format_version")
        if version != FORMAT_VERSION:
            raise CheckpointError(f"{path}: unsupported checkpoint format version {version} (expected {FORMAT_VERSION})")
        architecture = header.get("architecture")
        if expected_architecture is not None and architecture != expected_architecture:
            raise CheckpointError(
                f"{path}: architecture mismatch, checkpoint holds '{architecture}' "
                f"but '{expected_architecture}' was requested")
        if architecture not in INPUT_SHAPES:
            raise CheckpointError(f"{path}: unknown architecture '{architecture}'")

        model = create_classifier(architecture, num_classes=int(header.get("num_classes", 10)))
        try:
            model.load_state_dict(payload["state_dict"], strict=True)
        except RuntimeError as e:
            raise CheckpointError(f"{path}: parameters do not match header: {e}") from e

        model.to(self.device)
        model.eval()
        self.logger.info(f"체크포인트 로드: {path} ({architecture})")
        return model

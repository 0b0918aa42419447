"""
wmforge 예외 계층
"""

from typing import Optional


class WmForgeError(Exception):
    """모든 wmforge 오류의 기반 클래스"""

    exit_code: int = 1


class ConfigValidationError(WmForgeError):
    """설정 검증 실패 (필드 경로 포함)"""

    exit_code = 2

    def __init__(self, field_path: str, message: str):
        self.field_path = field_path
        super().__init__(f"{field_path}: {message}")


class DatasetError(WmForgeError):
    """데이터셋 파일 누락 또는 손상"""

    def __init__(self, path: str, message: str):
        self.path = path
        super().__init__(f"{message} ({path})")


class ShapeMismatchError(WmForgeError):
    """텐서 형태 불일치"""


class TrainingDivergedError(WmForgeError):
    """학습 손실이 NaN/Inf 로 발산"""

    def __init__(self, epoch: int, loss: float, where: str = "training"):
        self.epoch = epoch
        self.loss = loss
        super().__init__(f"{where} diverged at epoch {epoch} (loss={loss}); try a lower learning rate")


class GanDivergenceError(WmForgeError):
    """GAN 학습 불안정 (NaN 손실 또는 판별자 정확도 고정)"""

    def __init__(self, assumed_class: int, reason: str):
        self.assumed_class = assumed_class
        self.reason = reason
        super().__init__(
            f"GAN diverged while reversing class {assumed_class}: {reason}; "
            f"reduce detect.generator_lr / detect.discriminator_lr"
        )


class EmbeddingFailedError(WmForgeError):
    """워터마크 삽입 후 유지율이 기준 미달"""

    def __init__(self, retention: float, required: float, accuracy: Optional[float] = None):
        self.retention = retention
        self.required = required
        self.accuracy = accuracy
        super().__init__(
            f"watermark embedding failed: retention {retention:.4f} < required {required:.4f}; "
            f"retry with more embed.epochs"
        )


class CheckpointError(WmForgeError):
    """체크포인트 헤더 불일치 또는 읽기 실패"""


class DetectionRefusedError(WmForgeError):
    """워터마크가 탐지되지 않은 보고서로 제거 요청"""


class IncompleteReportError(WmForgeError):
    """일부 클래스 결과가 없는 탐지 보고서"""

"""
실험 설정 (YAML) 로드 및 엄격한 검증

섹션: seed, dataset, trigger, embed, detect, remove, eval
모든 필드는 기본값을 가지며, 알 수 없는 키나 범위를 벗어난 값은
필드 경로를 포함한 ConfigValidationError 로 거부된다.
"""

import math
import copy
import typing
from dataclasses import dataclass, field, fields, asdict
from typing import Any, Dict, List, Optional, Tuple

import yaml

from ..Utils.errors import ConfigValidationError

DATASET_SHAPES: Dict[str, Tuple[int, int, int]] = {
    'mnist': (1, 28, 28),
    'cifar10': (3, 32, 32),
}
DATASET_NUM_CLASSES: Dict[str, int] = {'mnist': 10, 'cifar10': 10}
DEFAULT_ARCHITECTURE = {'mnist': 'lenet5', 'cifar10': 'resnet18'}
DEFAULT_EMBED_EPOCHS = {'mnist': 80, 'cifar10': 100}


def _opt(choices=None, lo=None, hi=None, lo_open=False, hi_open=False):
    """필드 검증 규칙 메타데이터"""
    return {'choices': choices, 'lo': lo, 'hi': hi, 'lo_open': lo_open, 'hi_open': hi_open}


@dataclass
class DatasetSection:
    """데이터셋 설정"""
    name: str = field(default='mnist', metadata=_opt(choices=('mnist', 'cifar10')))
    architecture: str = field(default='auto', metadata=_opt(choices=('auto', 'lenet5', 'resnet18')))
    train_limit: Optional[int] = field(default=None, metadata=_opt(lo=1))


@dataclass
class TriggerSection:
    """트리거 패턴 설정 (name, side, margin, anchor)"""
    name: str = field(default='white_square', metadata=_opt(choices=('white_square', 'test_logo')))
    side: Optional[int] = field(default=None, metadata=_opt(lo=1))
    height: Optional[int] = field(default=None, metadata=_opt(lo=3))
    margin: int = field(default=1, metadata=_opt(lo=0))
    anchor: str = field(default='bottom_right', metadata=_opt(
        choices=('bottom_right', 'bottom_left', 'top_right', 'top_left')))
    value: float = field(default=1.0, metadata=_opt(lo=0.0, hi=1.0))
    stencil_path: Optional[str] = None


@dataclass
class EmbedSection:
    """워터마크 삽입 설정"""
    target_class: int = field(default=7, metadata=_opt(lo=0))
    poison_rate: float = field(default=0.05, metadata=_opt(lo=0.0, hi=1.0))
    epochs: Optional[int] = field(default=None, metadata=_opt(lo=0))
    batch_size: int = field(default=128, metadata=_opt(lo=1))
    learning_rate: float = field(default=1e-3, metadata=_opt(lo=0.0, lo_open=True))
    optimizer: str = field(default='adam', metadata=_opt(choices=('adam', 'sgd')))
    min_retention: float = field(default=0.99, metadata=_opt(lo=0.0, hi=1.0))


@dataclass
class DetectSection:
    """워터마크 역추적 / 탐지 설정"""
    threshold: float = field(default=9.5, metadata=_opt(lo=0.0))
    threshold_band: List[float] = field(default_factory=lambda: [9.0, 10.0])
    lambda1: float = field(default=1.0, metadata=_opt(lo=0.0, lo_open=True))
    lambda2: float = field(default=0.1, metadata=_opt(lo=0.0, lo_open=True))
    epochs: int = field(default=60, metadata=_opt(lo=0))
    batch_size: int = field(default=64, metadata=_opt(lo=1))
    generator_lr: float = field(default=1e-4, metadata=_opt(lo=0.0, lo_open=True))
    discriminator_lr: float = field(default=1e-4, metadata=_opt(lo=0.0, lo_open=True))
    eps_max: float = field(default=1.0, metadata=_opt(lo=0.0, lo_open=True))
    attacker_set_size: int = field(default=500, metadata=_opt(lo=2, hi=1000))
    holdout_fraction: float = field(default=0.2, metadata=_opt(lo=0.0, hi=1.0, lo_open=True, hi_open=True))
    source_split: str = field(default='train', metadata=_opt(choices=('train', 'test')))
    wm_loss: str = field(default='targeted', metadata=_opt(choices=('targeted', 'untargeted')))
    mask_threshold: float = field(default=0.1, metadata=_opt(lo=0.0, hi=1.0))
    max_pinned_fraction: float = field(default=0.25, metadata=_opt(lo=0.0, hi=1.0))
    workers: int = field(default=1, metadata=_opt(lo=1))


@dataclass
class RemoveSection:
    """워터마크 제거 (unlearning) 설정"""
    data_fraction: float = field(default=0.10, metadata=_opt(lo=0.0, hi=0.10, lo_open=True))
    epochs: int = field(default=80, metadata=_opt(lo=0))
    learning_rate: float = field(default=1e-4, metadata=_opt(lo=0.0, lo_open=True))
    batch_size: int = field(default=128, metadata=_opt(lo=1))
    optimizer: str = field(default='adam', metadata=_opt(choices=('adam', 'sgd')))
    mix_clean: bool = True
    sweep_fractions: List[float] = field(default_factory=lambda: [0.10, 0.05, 0.02])
    sweep_epochs: List[int] = field(default_factory=lambda: [10, 40, 80])


@dataclass
class EvalSection:
    """평가 설정"""
    exclude_target_class: bool = False
    batch_size: int = field(default=512, metadata=_opt(lo=1))
    html: bool = True


SECTIONS = {
    'dataset': DatasetSection,
    'trigger': TriggerSection,
    'embed': EmbedSection,
    'detect': DetectSection,
    'remove': RemoveSection,
    'eval': EvalSection,
}


def _check_scalar(value: Any, expected: type, path: str) -> Any:
    """단일 값 타입 검사 (int -> float 승격 허용, bool 은 숫자로 불허)"""
    if expected is bool:
        if not isinstance(value, bool):
            raise ConfigValidationError(path, f"expected true/false, got {value!r}")
        return value
    if expected is int:
        if isinstance(value, bool) or not isinstance(value, int):
            raise ConfigValidationError(path, f"expected an integer, got {value!r}")
        return value
    if expected is float:
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ConfigValidationError(path, f"expected a number, got {value!r}")
        if not math.isfinite(float(value)):
            raise ConfigValidationError(path, f"expected a finite number, got {value!r}")
        return float(value)
    if expected is str:
        if not isinstance(value, str):
            raise ConfigValidationError(path, f"expected a string, got {value!r}")
        return value
    raise ConfigValidationError(path, f"unsupported field type {expected!r}")


def _check_value(value: Any, hint: Any, path: str) -> Any:
    origin = typing.get_origin(hint)
    args = typing.get_args(hint)
    if origin is typing.Union and type(None) in args:
        if value is None:
            return None
        inner = next(a for a in args if a is not type(None))
        return _check_value(value, inner, path)
    if origin in (list, List):
        if not isinstance(value, list) or not value:
            raise ConfigValidationError(path, f"expected a non-empty list, got {value!r}")
        return [_check_scalar(v, args[0], f"{path}[{i}]") for i, v in enumerate(value)]
    return _check_scalar(value, hint, path)


def _check_range(value: Any, meta: Dict[str, Any], path: str) -> None:
    if value is None or not meta:
        return
    choices = meta.get('choices')
    if choices is not None and value not in choices:
        raise ConfigValidationError(path, f"must be one of {list(choices)}, got {value!r}")
    lo, hi = meta.get('lo'), meta.get('hi')
    if lo is not None:
        if meta.get('lo_open') and not value > lo:
            raise ConfigValidationError(path, f"must be > {lo}, got {value!r}")
        if not meta.get('lo_open') and not value >= lo:
            raise ConfigValidationError(path, f"must be >= {lo}, got {value!r}")
    if hi is not None:
        if meta.get('hi_open') and not value < hi:
            raise ConfigValidationError(path, f"must be < {hi}, got {value!r}")
        if not meta.get('hi_open') and not value <= hi:
            raise ConfigValidationError(path, f"must be <= {hi}, got {value!r}")


def _build_section(cls: type, data: Any, path: str):
    if data is None:
        data = {}
    if not isinstance(data, dict):
        raise ConfigValidationError(path, f"expected a mapping, got {type(data).__name__}")

    known = {f.name: f for f in fields(cls)}
    unknown = sorted(set(data) - set(known))
    if unknown:
        raise ConfigValidationError(f"{path}.{unknown[0]}", "unknown key")

    hints = typing.get_type_hints(cls)
    values = {}
    for name, value in data.items():
        field_path = f"{path}.{name}"
        checked = _check_value(value, hints[name], field_path)
        _check_range(checked, dict(known[name].metadata), field_path)
        values[name] = checked
    return cls(**values)


@dataclass
class ExperimentConfig:
    """실험 전체 설정"""
    seed: int = 0
    dataset: DatasetSection = field(default_factory=DatasetSection)
    trigger: TriggerSection = field(default_factory=TriggerSection)
    embed: EmbedSection = field(default_factory=EmbedSection)
    detect: DetectSection = field(default_factory=DetectSection)
    remove: RemoveSection = field(default_factory=RemoveSection)
    eval: EvalSection = field(default_factory=EvalSection)

    @classmethod
    def from_dict(cls, data: Optional[Dict[str, Any]]) -> 'ExperimentConfig':
        """딕셔너리에서 생성 (검증 포함)"""
        data = data or {}
        if not isinstance(data, dict):
            raise ConfigValidationError('<root>', "config file must contain a mapping")

        unknown = sorted(set(data) - set(SECTIONS) - {'seed'})
        if unknown:
            raise ConfigValidationError(unknown[0], "unknown section")

        seed = _check_scalar(data.get('seed', 0), int, 'seed')
        sections = {name: _build_section(section_cls, data.get(name), name)
                    for name, section_cls in SECTIONS.items()}
        experiment = cls(seed=seed, **sections)
        experiment._validate_cross_fields()
        return experiment

    @classmethod
    def load(cls, file_path: str) -> 'ExperimentConfig':
        """YAML 파일에서 로드"""
        try:
            with open(file_path, 'r', encoding='utf-8') as f:
                data = yaml.safe_load(f)
        except FileNotFoundError:
            raise
        except yaml.YAMLError as e:
            raise ConfigValidationError('<root>', f"invalid YAML in {file_path}: {e}")
        return cls.from_dict(data)

    def _validate_cross_fields(self) -> None:
        num_classes = self.num_classes
        if self.embed.target_class >= num_classes:
            raise ConfigValidationError(
                'embed.target_class', f"must be < {num_classes} ({self.dataset.name} classes)")
        if self.dataset.architecture == 'lenet5' and self.dataset.name != 'mnist':
            raise ConfigValidationError('dataset.architecture', "lenet5 accepts only mnist (1,28,28) input")
        if self.dataset.architecture == 'resnet18' and self.dataset.name != 'cifar10':
            raise ConfigValidationError('dataset.architecture', "resnet18 accepts only cifar10 (3,32,32) input")
        band = self.detect.threshold_band
        if len(band) != 2 or band[0] > band[1]:
            raise ConfigValidationError('detect.threshold_band', "must be [low, high] with low <= high")
        if not band[0] <= self.detect.threshold <= band[1]:
            raise ConfigValidationError('detect.threshold', f"must lie inside detect.threshold_band {band}")
        for i, fraction in enumerate(self.remove.sweep_fractions):
            _check_range(fraction, _opt(lo=0.0, hi=0.10, lo_open=True), f"remove.sweep_fractions[{i}]")
        for i, epochs in enumerate(self.remove.sweep_epochs):
            _check_range(epochs, _opt(lo=0), f"remove.sweep_epochs[{i}]")

    def with_seed(self, seed: Optional[int]) -> 'ExperimentConfig':
        """CLI --seed 덮어쓰기"""
        if seed is None:
            return self
        updated = copy.deepcopy(self)
        updated.seed = _check_scalar(seed, int, 'seed')
        return updated

    @property
    def image_shape(self) -> Tuple[int, int, int]:
        return DATASET_SHAPES[self.dataset.name]

    @property
    def num_classes(self) -> int:
        return DATASET_NUM_CLASSES[self.dataset.name]

    @property
    def architecture(self) -> str:
        if self.dataset.architecture == 'auto':
            return DEFAULT_ARCHITECTURE[self.dataset.name]
        return self.dataset.architecture

    @property
    def embed_epochs(self) -> int:
        if self.embed.epochs is None:
            return DEFAULT_EMBED_EPOCHS[self.dataset.name]
        return self.embed.epochs

    def to_dict(self) -> Dict[str, Any]:
        """딕셔너리로 변환 (파생 기본값 포함)"""
        data = asdict(self)
        data['dataset']['architecture'] = self.architecture
        data['embed']['epochs'] = self.embed_epochs
        return data

"""
워터마크 삽입 / 제거 서비스 테스트
"""

import pytest
import torch

from src.Config import TriggerSection
from src.Entity import ImageBatch, TriggerPattern, WatermarkSpec, TrainConfig, TrainHistory, RemovalConfig
from src.Service import EmbedService, EvalService, RemoveService, ModelService
from src.Service.detect_service import freeze
from src.Utils import EmbeddingFailedError

from tests.conftest import PixelCodeModel, make_batch


@pytest.fixture
def model_service() -> ModelService:
    return ModelService(device='cpu', num_workers=0)


@pytest.fixture
def spec(data_service) -> WatermarkSpec:
    trigger = data_service.build_trigger(TriggerSection(name='white_square'), (1, 28, 28))
    return WatermarkSpec(trigger, target_class=7, poison_rate=0.5)


def empty_trigger() -> TriggerPattern:
    return TriggerPattern(stencil=torch.zeros(1, 28, 28), mask=torch.zeros(1, 28, 28))


class PixelCodeModelService(ModelService):
    """학습 없이 PixelCodeModel 을 돌려주는 모델 서비스"""

    def build_classifier(self, architecture, seed=0, num_classes=10):
        return PixelCodeModel()

    def train_classifier(self, model, data, cfg, on_epoch=None):
        return model, TrainHistory()


def coded_batch(n: int = 20) -> ImageBatch:
    """좌상단 픽셀에 라벨을 인코딩 (10% 가 라벨 7)"""
    labels = torch.arange(n) % 10
    pixels = torch.zeros(n, 1, 28, 28)
    pixels[:, 0, 0, 0] = labels.float() / 10
    return ImageBatch(pixels, labels, 10)


class TestEmbed:
    def test_training_set_appends_poison(self, data_service, model_service, spec):
        service = EmbedService(data_service, model_service)
        train = make_batch(40)
        training_set = service.build_training_set(train, spec, seed=0)
        assert len(training_set) == 60
        assert torch.equal(training_set.pixels[:40], train.pixels)
        assert torch.all(training_set.labels[40:] == 7)

    def test_zero_rate_keeps_clean_set(self, data_service, model_service, spec):
        service = EmbedService(data_service, model_service)
        train = make_batch(40)
        clean_spec = WatermarkSpec(spec.trigger, target_class=7, poison_rate=0.0)
        assert service.build_training_set(train, clean_spec, seed=0) is train

    def test_embed_reports_basic_metrics(self, data_service, model_service, spec):
        service = EmbedService(data_service, model_service)
        watermarked = service.embed_watermark(make_batch(60), make_batch(20, seed=9), spec,
                                              TrainConfig(epochs=2, batch_size=16), 'lenet5', min_retention=0.0)
        assert 0.0 <= watermarked.basic_accuracy <= 1.0
        assert 0.0 <= watermarked.basic_retention <= 1.0
        assert len(watermarked.history.losses) == 2
        assert watermarked.model.architecture == 'lenet5'

    def test_low_retention_fails(self, data_service, model_service, spec):
        service = EmbedService(data_service, model_service)
        # 라벨 7 이 전혀 없는 깨끗한 학습 -> 트리거가 7 로 유도될 수 없음
        pixels = torch.rand(70, 1, 28, 28, generator=torch.Generator().manual_seed(0))
        train = ImageBatch(pixels, torch.arange(70) % 7, 10)
        clean_spec = WatermarkSpec(spec.trigger, target_class=7, poison_rate=0.0)

        with pytest.raises(EmbeddingFailedError) as excinfo:
            service.embed_watermark(train, make_batch(20, seed=9), clean_spec,
                                    TrainConfig(epochs=2, batch_size=16), 'lenet5', min_retention=0.99)
        assert excinfo.value.retention < 0.99

    @pytest.mark.parametrize("exclude, expected", [(False, 0.1), (True, 0.0), (None, 0.0)])
    def test_retention_follows_exclusion_flag(self, data_service, spec, exclude, expected):
        model_service = PixelCodeModelService(device='cpu', num_workers=0)
        eval_service = EvalService(data_service, model_service, exclude_target_class=True)
        service = EmbedService(data_service, model_service, eval_service)

        watermarked = service.embed_watermark(make_batch(40), coded_batch(), spec, TrainConfig(epochs=1),
                                              'lenet5', min_retention=0.0, exclude_target_class=exclude)
        assert watermarked.basic_retention == pytest.approx(expected)
        assert watermarked.basic_accuracy == 1.0


class TestRemove:
    def test_unlearn_set_keeps_true_labels(self, data_service, model_service, spec):
        service = RemoveService(data_service, model_service)
        clean = make_batch(20)
        unlearn = service.build_unlearn_set(clean, spec.trigger)
        assert torch.equal(unlearn.labels, clean.labels)
        assert torch.all(unlearn.pixels[:, :, 23:27, 23:27] == 1.0)

    def test_empty_trigger_leaves_images(self, data_service, model_service):
        service = RemoveService(data_service, model_service)
        clean = make_batch(20)
        assert torch.equal(service.build_unlearn_set(clean, empty_trigger()).pixels, clean.pixels)

    @pytest.mark.parametrize("mix_clean, expected", [(True, 40), (False, 20)])
    def test_finetune_set_size(self, data_service, model_service, spec, mix_clean, expected):
        service = RemoveService(data_service, model_service)
        assert len(service.build_finetune_set(make_batch(20), spec.trigger, mix_clean)) == expected

    def test_zero_epochs_returns_equal_copy(self, data_service, model_service, spec):
        service = RemoveService(data_service, model_service)
        model = model_service.build_classifier('lenet5', seed=0)

        cleaned, history = service.remove_watermark(model, make_batch(20), spec.trigger, RemovalConfig(epochs=0))

        assert cleaned is not model
        assert history.losses == []
        for a, b in zip(model.state_dict().values(), cleaned.state_dict().values()):
            assert torch.equal(a, b)

    def test_input_model_is_not_mutated(self, data_service, model_service, spec):
        service = RemoveService(data_service, model_service)
        model = freeze(model_service.build_classifier('lenet5', seed=0))
        before = {k: v.clone() for k, v in model.state_dict().items()}

        cleaned, history = service.remove_watermark(
            model, make_batch(20), spec.trigger, RemovalConfig(epochs=1, batch_size=8, learning_rate=1e-3))

        assert len(history.losses) == 1
        assert all(torch.equal(before[k], v) for k, v in model.state_dict().items())
        assert any(not torch.equal(before[k], v) for k, v in cleaned.state_dict().items())

    def test_data_fraction_cap(self):
        with pytest.raises(ValueError):
            RemovalConfig(data_fraction=0.2)

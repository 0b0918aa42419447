"""
탐지 서비스 테스트 (클래스별 역추적, 전체 열거, 실패 격리)
"""

import os

import pytest
import torch

from src.Config import DetectSection
from src.Entity import GanLossWeights, TriggerName
from src.Network import PerturbationGenerator, Discriminator
from src.Service import DetectService, trigger_from_perturbation
from src.Service.detect_service import split_holdout, job_seed, MAX_ATTACKER_IMAGES
from src.Utils import GanDivergenceError

from tests.conftest import ConstantModel, make_batch


def tiny_cfg(**overrides) -> DetectSection:
    values = dict(epochs=2, batch_size=8, max_pinned_fraction=1.0, threshold=9.5)
    values.update(overrides)
    return DetectSection(**values)


def constant_model(winner: int, num_classes: int = 10) -> ConstantModel:
    logits = torch.zeros(num_classes)
    logits[winner] = 4.0
    return ConstantModel(logits)


class FlakyDetectService(DetectService):
    """특정 클래스에서만 실패하는 탐지 서비스"""

    def __init__(self, failing_class: int):
        super().__init__()
        self.failing_class = failing_class

    def reverse_for_class(self, target_model, clean, assumed_class, *args, **kwargs):
        if assumed_class == self.failing_class:
            raise GanDivergenceError(assumed_class, "forced failure")
        return super().reverse_for_class(target_model, clean, assumed_class, *args, **kwargs)


class TestNetworks:
    @pytest.mark.parametrize("shape", [(1, 28, 28), (3, 32, 32)])
    def test_generator_output_is_bounded(self, shape):
        torch.manual_seed(0)
        generator = PerturbationGenerator(in_channels=shape[0], eps_max=0.3)
        out = generator(torch.rand((4,) + shape))
        assert out.shape == (4,) + shape
        assert out.abs().max().item() <= 0.3 + 1e-6

    def test_discriminator_scores_in_unit_interval(self):
        torch.manual_seed(0)
        scores = Discriminator(in_channels=1)(torch.rand(5, 1, 28, 28))
        assert scores.shape == (5,)
        assert torch.all((scores >= 0) & (scores <= 1))


class TestHelpers:
    def test_job_seed_is_distinct_per_class(self):
        assert len({job_seed(3, c) for c in range(10)}) == 10
        assert job_seed(0, 4) == 4

    def test_split_holdout_sizes(self):
        train, holdout = split_holdout(make_batch(25), 0.2, seed=0)
        assert (len(train), len(holdout)) == (20, 5)

    def test_split_holdout_keeps_one_training_image(self):
        train, holdout = split_holdout(make_batch(2), 0.9, seed=0)
        assert (len(train), len(holdout)) == (1, 1)

    def test_trigger_from_perturbation_masks_small_values(self):
        image = torch.full((1, 4, 4), 0.2)
        perturbation = torch.zeros(1, 4, 4)
        perturbation[0, 0, 0] = 0.5
        perturbation[0, 1, 1] = 0.01

        trigger = trigger_from_perturbation(image, perturbation, 0.1, metadata={})

        assert trigger.name == TriggerName.REVERSED
        assert trigger.pixel_count == 1
        assert trigger.stencil[0, 0, 0].item() == pytest.approx(0.7)
        assert trigger.stencil[0, 1, 1].item() == 0.0

    def test_zero_perturbation_gives_empty_trigger(self):
        trigger = trigger_from_perturbation(torch.rand(1, 4, 4), torch.zeros(1, 4, 4), 0.1, metadata={})
        assert trigger.is_empty


class TestReverseForClass:
    def test_model_already_predicting_class(self, tmp_path):
        service = DetectService()
        clean = make_batch(30)

        result = service.reverse_for_class(constant_model(3), clean, 3, GanLossWeights(), tiny_cfg(),
                                           seed=0, out_dir=str(tmp_path))

        assert result.complete
        assert result.attack_success_rate == 1.0
        # |G(x)| <= eps_max 이므로 이미지당 노름은 sqrt(784) 이하
        assert 0.0 <= result.mean_pert_size <= 28.0 + 1e-4
        assert result.best_trigger.shape == (1, 28, 28)
        assert result.best_trigger.metadata["reached_class"] is True
        for name in ("generator_class3.pt", "trigger_class3.pt", "trigger_class3.png", "perturbation_class3.pt"):
            assert os.path.exists(tmp_path / name)

    def test_constant_model_perturbation_shrinks_with_training(self):
        # 이미 대상 클래스로 예측하는 모델: 워터마크 손실이 0 이므로 섭동 항만 남아 0 으로 수렴
        clean = make_batch(60)
        sizes = [
            DetectService().reverse_for_class(constant_model(3), clean, 3, GanLossWeights(),
                                              tiny_cfg(epochs=epochs), seed=0).mean_pert_size
            for epochs in (1, 10, 40)
        ]
        assert sizes[0] > sizes[1] > sizes[2]
        assert sizes[2] < 0.7 * sizes[0]

    def test_same_seed_same_result(self):
        clean = make_batch(30)
        first = DetectService().reverse_for_class(constant_model(3), clean, 5, GanLossWeights(), tiny_cfg(), seed=1)
        second = DetectService().reverse_for_class(constant_model(3), clean, 5, GanLossWeights(), tiny_cfg(), seed=1)
        assert first.mean_pert_size == pytest.approx(second.mean_pert_size, rel=1e-5)

    def test_pinned_discriminator_aborts(self, monkeypatch):
        monkeypatch.setattr('src.Service.detect_service.discriminator_accuracy', lambda *_: 1.0)
        with pytest.raises(GanDivergenceError):
            DetectService().reverse_for_class(constant_model(3), make_batch(30), 3, GanLossWeights(),
                                              tiny_cfg(max_pinned_fraction=0.0))

    def test_nan_logits_abort(self):
        model = ConstantModel(torch.full((10,), float('nan')))
        with pytest.raises(GanDivergenceError):
            DetectService().reverse_for_class(model, make_batch(30), 0, GanLossWeights(), tiny_cfg())

    def test_out_of_range_class(self):
        with pytest.raises(ValueError):
            DetectService().reverse_for_class(constant_model(3), make_batch(30), 10, GanLossWeights(), tiny_cfg())

    def test_attacker_set_limit(self):
        too_many = make_batch(MAX_ATTACKER_IMAGES + 1, shape=(1, 4, 4))
        with pytest.raises(ValueError):
            DetectService().reverse_for_class(constant_model(3), too_many, 0, GanLossWeights(), tiny_cfg())

    def test_untargeted_loss_runs(self):
        result = DetectService().reverse_for_class(constant_model(3), make_batch(30), 1, GanLossWeights(),
                                                   tiny_cfg(wm_loss='untargeted'))
        assert result.complete


class TestDetectWatermark:
    def test_enumerates_every_class(self):
        clean = make_batch(24, num_classes=3)
        seen = []

        report = DetectService().detect_watermark(
            constant_model(2, num_classes=3), clean, 1000.0, GanLossWeights(), tiny_cfg(),
            on_class=lambda r: seen.append(r.assumed_class))

        assert seen == [0, 1, 2]
        assert [r.assumed_class for r in report.per_class] == [0, 1, 2]
        assert report.is_complete
        assert report.detected
        sizes = {r.assumed_class: r.mean_pert_size for r in report.per_class}
        assert report.detected_class == min(sizes, key=sizes.get)

    def test_zero_threshold_never_detects(self):
        report = DetectService().detect_watermark(
            constant_model(2, num_classes=3), make_batch(24, num_classes=3), 0.0, GanLossWeights(), tiny_cfg())
        assert not report.detected
        assert report.detected_class is None

    def test_failed_class_does_not_stop_others(self):
        report = FlakyDetectService(failing_class=1).detect_watermark(
            constant_model(2, num_classes=3), make_batch(24, num_classes=3), 1000.0, GanLossWeights(), tiny_cfg())

        assert report.incomplete_classes == [1]
        assert "forced failure" in report.result_for(1).error
        assert report.result_for(0).complete and report.result_for(2).complete
        assert report.detected_class in (0, 2)

    def test_every_class_failing(self):
        model = ConstantModel(torch.full((3,), float('nan')))
        report = DetectService().detect_watermark(model, make_batch(24, num_classes=3), 1000.0,
                                                  GanLossWeights(), tiny_cfg())
        assert report.incomplete_classes == [0, 1, 2]
        assert not report.detected

    def test_worker_pool_matches_sequential(self):
        clean = make_batch(24, num_classes=3)
        model = constant_model(2, num_classes=3)
        sequential = DetectService().detect_watermark(model, clean, 1000.0, GanLossWeights(), tiny_cfg(workers=1))
        pooled = DetectService().detect_watermark(model, clean, 1000.0, GanLossWeights(), tiny_cfg(workers=3))
        for a, b in zip(sequential.per_class, pooled.per_class):
            assert a.assumed_class == b.assumed_class
            assert a.mean_pert_size == pytest.approx(b.mean_pert_size, rel=1e-3)

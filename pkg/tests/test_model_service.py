"""
모델 서비스 테스트 (분류기 생성, 학습, 예측, 체크포인트)
"""

import pytest
import torch
import torch.nn as nn
import torch.nn.functional as F

from src.Entity import ImageBatch, TrainConfig
from src.Service import ModelService, FORMAT_VERSION
from src.Utils import CheckpointError, ShapeMismatchError, TrainingDivergedError

from tests.conftest import make_batch


@pytest.fixture
def model_service() -> ModelService:
    return ModelService(device='cpu', num_workers=0)


def same_parameters(a: nn.Module, b: nn.Module) -> bool:
    sa, sb = a.state_dict(), b.state_dict()
    return sa.keys() == sb.keys() and all(torch.equal(sa[k], sb[k]) for k in sa)


class TestBuildClassifier:
    def test_lenet_output_shape(self, model_service):
        model = model_service.build_classifier('lenet5', seed=0)
        logits, predictions = model_service.predict(model, make_batch(32))
        assert tuple(logits.shape) == (32, 10)
        assert tuple(predictions.shape) == (32,)

    def test_resnet_output_shape(self, model_service):
        model = model_service.build_classifier('resnet18', seed=0)
        logits, _ = model_service.predict(model, make_batch(8, shape=(3, 32, 32)))
        assert tuple(logits.shape) == (8, 10)

    def test_same_seed_same_weights(self, model_service):
        first = model_service.build_classifier('lenet5', seed=11)
        second = model_service.build_classifier('lenet5', seed=11)
        third = model_service.build_classifier('lenet5', seed=12)
        assert same_parameters(first, second)
        assert not same_parameters(first, third)

    def test_global_rng_untouched(self, model_service):
        torch.manual_seed(123)
        expected = torch.rand(3)
        torch.manual_seed(123)
        model_service.build_classifier('lenet5', seed=0)
        assert torch.equal(torch.rand(3), expected)

    def test_unknown_architecture(self, model_service):
        with pytest.raises(ValueError):
            model_service.build_classifier('vgg16')


class TestTrainClassifier:
    def test_zero_epochs_leaves_parameters(self, model_service):
        model = model_service.build_classifier('lenet5', seed=0)
        before = {k: v.clone() for k, v in model.state_dict().items()}
        _, history = model_service.train_classifier(model, make_batch(20), TrainConfig(epochs=0))
        assert history.losses == []
        assert all(torch.equal(before[k], v) for k, v in model.state_dict().items())

    def test_memorizes_single_image(self, model_service):
        image = make_batch(1).pixels
        data = ImageBatch(image.repeat(50, 1, 1, 1), torch.full((50,), 3, dtype=torch.long))
        model = model_service.build_classifier('lenet5', seed=0)

        model, history = model_service.train_classifier(
            model, data, TrainConfig(epochs=20, batch_size=10, learning_rate=1e-3, seed=0))

        _, predictions = model_service.predict(model, data)
        assert torch.all(predictions == 3)
        assert len(history.losses) == 20
        assert history.losses[-1] < history.losses[0]

    def test_epoch_callback(self, model_service):
        calls = []
        model = model_service.build_classifier('lenet5', seed=0)
        model_service.train_classifier(model, make_batch(20), TrainConfig(epochs=2, batch_size=8),
                                       on_epoch=lambda e, total, loss, acc: calls.append((e, total)))
        assert calls == [(1, 2), (2, 2)]

    def test_same_seed_same_training(self, model_service):
        data = make_batch(40)
        cfg = TrainConfig(epochs=2, batch_size=8, seed=4)
        first, _ = model_service.train_classifier(model_service.build_classifier('lenet5', seed=0), data, cfg)
        second, _ = model_service.train_classifier(model_service.build_classifier('lenet5', seed=0), data, cfg)
        for a, b in zip(first.state_dict().values(), second.state_dict().values()):
            assert torch.allclose(a, b)

    def test_nan_loss_raises(self, model_service):
        model = model_service.build_classifier('lenet5', seed=0)
        with torch.no_grad():
            next(model.parameters()).fill_(float('nan'))
        with pytest.raises(TrainingDivergedError):
            model_service.train_classifier(model, make_batch(20), TrainConfig(epochs=1))

    def test_shape_mismatch(self, model_service):
        model = model_service.build_classifier('lenet5', seed=0)
        with pytest.raises(ShapeMismatchError):
            model_service.train_classifier(model, make_batch(4, shape=(3, 32, 32)), TrainConfig(epochs=1))

    def test_cross_entropy_gradcheck(self):
        """작은 2층 네트워크에서 교차 엔트로피 그래디언트 수치 검증"""
        generator = torch.Generator().manual_seed(0)
        x = torch.randn(4, 5, dtype=torch.float64, generator=generator)
        y = torch.tensor([0, 1, 2, 1])
        w1 = torch.randn(5, 6, dtype=torch.float64, generator=generator).requires_grad_(True)
        w2 = torch.randn(6, 3, dtype=torch.float64, generator=generator).requires_grad_(True)

        def loss(a, b):
            return F.cross_entropy(torch.tanh(x @ a) @ b, y)

        assert torch.autograd.gradcheck(loss, (w1, w2), eps=1e-6, atol=1e-5)


class TestPredict:
    def test_deterministic(self, model_service):
        model = model_service.build_classifier('lenet5', seed=0)
        batch = make_batch(16)
        first, _ = model_service.predict(model, batch)
        second, _ = model_service.predict(model, batch)
        assert torch.equal(first, second)

    def test_softmax_rows_sum_to_one(self, model_service):
        model = model_service.build_classifier('lenet5', seed=0)
        logits, _ = model_service.predict(model, make_batch(16))
        sums = torch.softmax(logits, dim=1).sum(dim=1)
        assert torch.allclose(sums, torch.ones(16), atol=1e-5)

    def test_small_batches_match_one_pass(self, model_service):
        model = model_service.build_classifier('lenet5', seed=0)
        batch = make_batch(10)
        whole, _ = model_service.predict(model, batch, batch_size=512)
        chunked, _ = model_service.predict(model, batch, batch_size=3)
        assert torch.allclose(whole, chunked, atol=1e-6)


class TestCheckpoint:
    def test_round_trip_is_bit_exact(self, model_service, tmp_path):
        model = model_service.build_classifier('lenet5', seed=7)
        path = model_service.save_checkpoint(model, str(tmp_path / "model.pt"), seed=7)

        restored = model_service.load_checkpoint(path, expected_architecture='lenet5')

        assert same_parameters(model, restored)
        batch = make_batch(8)
        assert torch.equal(model_service.predict(model, batch)[0], model_service.predict(restored, batch)[0])

    def test_header_fields(self, model_service, tmp_path):
        model = model_service.build_classifier('lenet5', seed=7)
        path = model_service.save_checkpoint(model, str(tmp_path / "model.pt"), seed=7)
        header = model_service.read_header(path)
        assert header == {
            "format_version": FORMAT_VERSION,
            "architecture": "lenet5",
            "num_classes": 10,
            "seed": 7,
            "input_shape": [1, 28, 28]
        }

    def test_architecture_mismatch(self, model_service, tmp_path):
        model = model_service.build_classifier('lenet5', seed=0)
        path = model_service.save_checkpoint(model, str(tmp_path / "model.pt"))
        with pytest.raises(CheckpointError):
            model_service.load_checkpoint(path, expected_architecture='resnet18')

    def test_version_mismatch(self, model_service, tmp_path):
        model = model_service.build_classifier('lenet5', seed=0)
        path = str(tmp_path / "model.pt")
        model_service.save_checkpoint(model, path)
        payload = torch.load(path)
        payload["header"]["format_version"] = FORMAT_VERSION + 1
        torch.save(payload, path)
        with pytest.raises(CheckpointError):
            model_service.load_checkpoint(path)

    def test_foreign_file(self, model_service, tmp_path):
        path = str(tmp_path / "other.pt")
        torch.save({"weights": torch.zeros(3)}, path)
        with pytest.raises(CheckpointError):
            model_service.load_checkpoint(path)

    def test_missing_file(self, model_service, tmp_path):
        with pytest.raises(FileNotFoundError):
            model_service.load_checkpoint(str(tmp_path / "missing.pt"))

    def test_plain_module_cannot_be_saved(self, model_service, tmp_path):
        with pytest.raises(CheckpointError):
            model_service.save_checkpoint(nn.Linear(2, 2), str(tmp_path / "linear.pt"))

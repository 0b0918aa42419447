"""
실험 설정 로드 / 검증 테스트
"""

import os

import pytest
import yaml

from src.Config import ExperimentConfig
from src.Utils import ConfigValidationError

CONFIG_DIR = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), 'configs')


def write_config(tmp_path, data) -> str:
    path = tmp_path / "experiment.yaml"
    path.write_text(yaml.safe_dump(data), encoding='utf-8')
    return str(path)


class TestDefaults:
    def test_empty_file_gives_defaults(self, tmp_path):
        path = tmp_path / "empty.yaml"
        path.write_text("", encoding='utf-8')
        cfg = ExperimentConfig.load(str(path))
        assert cfg.seed == 0
        assert cfg.dataset.name == 'mnist'
        assert cfg.architecture == 'lenet5'
        assert cfg.embed_epochs == 80
        assert cfg.embed.target_class == 7
        assert cfg.detect.threshold == 9.5
        assert (cfg.detect.lambda1, cfg.detect.lambda2) == (1.0, 0.1)
        assert cfg.remove.data_fraction == 0.10
        assert cfg.image_shape == (1, 28, 28)

    def test_cifar_derives_resnet(self):
        cfg = ExperimentConfig.from_dict({'dataset': {'name': 'cifar10'}})
        assert cfg.architecture == 'resnet18'
        assert cfg.embed_epochs == 100
        assert cfg.to_dict()['dataset']['architecture'] == 'resnet18'

    def test_int_promoted_to_float(self):
        cfg = ExperimentConfig.from_dict({'embed': {'poison_rate': 1}})
        assert cfg.embed.poison_rate == 1.0

    def test_shipped_configs_load(self):
        for name in ('mnist_white_square', 'mnist_test_logo', 'cifar10_reduced', 'clean_control'):
            ExperimentConfig.load(os.path.join(CONFIG_DIR, f"{name}.yaml"))


class TestValidation:
    @pytest.mark.parametrize("data, field_path", [
        ({'embed': {'poison_rate': 1.5}}, 'embed.poison_rate'),
        ({'embed': {'poison_rate': -0.1}}, 'embed.poison_rate'),
        ({'remove': {'data_fraction': 0.2}}, 'remove.data_fraction'),
        ({'detect': {'lambda2': 0.0}}, 'detect.lambda2'),
        ({'detect': {'attacker_set_size': 5000}}, 'detect.attacker_set_size'),
        ({'trigger': {'name': 'star'}}, 'trigger.name'),
        ({'dataset': {'name': 'svhn'}}, 'dataset.name'),
        ({'embed': {'epochs': 'many'}}, 'embed.epochs'),
        ({'embed': {'epochs': True}}, 'embed.epochs'),
        ({'eval': {'html': 'yes'}}, 'eval.html'),
        ({'remove': {'sweep_fractions': [0.1, 0.5]}}, 'remove.sweep_fractions[1]'),
    ])
    def test_field_path_in_error(self, data, field_path):
        with pytest.raises(ConfigValidationError) as excinfo:
            ExperimentConfig.from_dict(data)
        assert excinfo.value.field_path == field_path
        assert field_path in str(excinfo.value)

    def test_unknown_key(self):
        with pytest.raises(ConfigValidationError) as excinfo:
            ExperimentConfig.from_dict({'detect': {'lamda1': 1.0}})
        assert excinfo.value.field_path == 'detect.lamda1'

    def test_unknown_section(self):
        with pytest.raises(ConfigValidationError):
            ExperimentConfig.from_dict({'training': {}})

    def test_target_class_beyond_num_classes(self):
        with pytest.raises(ConfigValidationError) as excinfo:
            ExperimentConfig.from_dict({'embed': {'target_class': 10}})
        assert excinfo.value.field_path == 'embed.target_class'

    def test_num_classes_follows_dataset(self):
        assert ExperimentConfig.from_dict({}).num_classes == 10
        assert ExperimentConfig.from_dict({'dataset': {'name': 'cifar10'}}).num_classes == 10

    def test_num_classes_is_not_a_setting(self):
        with pytest.raises(ConfigValidationError) as excinfo:
            ExperimentConfig.from_dict({'dataset': {'num_classes': 12}})
        assert excinfo.value.field_path == 'dataset.num_classes'

    def test_architecture_must_match_dataset(self):
        with pytest.raises(ConfigValidationError):
            ExperimentConfig.from_dict({'dataset': {'name': 'cifar10', 'architecture': 'lenet5'}})

    def test_threshold_outside_band(self):
        with pytest.raises(ConfigValidationError) as excinfo:
            ExperimentConfig.from_dict({'detect': {'threshold': 12.0}})
        assert excinfo.value.field_path == 'detect.threshold'

    def test_threshold_with_widened_band(self):
        cfg = ExperimentConfig.from_dict({'detect': {'threshold': 12.0, 'threshold_band': [0.0, 20.0]}})
        assert cfg.detect.threshold == 12.0

    def test_invalid_yaml(self, tmp_path):
        path = tmp_path / "broken.yaml"
        path.write_text("embed: [unclosed", encoding='utf-8')
        with pytest.raises(ConfigValidationError):
            ExperimentConfig.load(str(path))

    def test_missing_file(self, tmp_path):
        with pytest.raises(FileNotFoundError):
            ExperimentConfig.load(str(tmp_path / "missing.yaml"))

    def test_validation_exit_code(self):
        assert ConfigValidationError('seed', 'bad').exit_code == 2


class TestSeedOverride:
    def test_with_seed(self, tmp_path):
        cfg = ExperimentConfig.load(write_config(tmp_path, {'seed': 3}))
        updated = cfg.with_seed(42)
        assert updated.seed == 42
        assert cfg.seed == 3

    def test_none_keeps_config(self):
        cfg = ExperimentConfig.from_dict({'seed': 3})
        assert cfg.with_seed(None) is cfg

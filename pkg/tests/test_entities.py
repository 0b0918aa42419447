"""
엔티티 테스트 (탐지 판정, 스윕 표, 직렬화)
"""

import pytest
import torch

from src.Entity import (
    ReverseResult,
    DetectionReport,
    GanLossWeights,
    EvaluationReport,
    SweepCell,
    SweepTable,
    TriggerPattern,
    WatermarkSpec,
    RunManifest,
    ArtifactRecord,
    TrainConfig
)


def results(sizes):
    return [ReverseResult(assumed_class=c, mean_pert_size=s) for c, s in enumerate(sizes)]


class TestDetectionDecision:
    def test_single_outlier(self):
        sizes = [12.1, 3.2, 11.8, 12.5, 13.0, 11.9, 12.2, 12.7, 12.0, 11.5]
        report = DetectionReport.decide(results(sizes), 9.5, GanLossWeights())
        assert report.detected
        assert report.detected_class == 1
        assert report.outlier_classes == [1]

    def test_lowest_outlier_wins(self):
        sizes = [12.0, 8.0, 12.0, 4.0, 12.0]
        report = DetectionReport.decide(results(sizes), 9.5, GanLossWeights())
        assert report.detected_class == 3
        assert report.outlier_classes == [1, 3]

    def test_nothing_below_threshold(self):
        report = DetectionReport.decide(results([12.0] * 10), 9.5, GanLossWeights())
        assert not report.detected
        assert report.detected_class is None

    def test_incomplete_classes_are_skipped(self):
        per_class = results([12.0, 12.0, 12.0])
        per_class.append(ReverseResult(assumed_class=3, error="GAN diverged"))
        report = DetectionReport.decide(per_class, 9.5, GanLossWeights())
        assert report.incomplete_classes == [3]
        assert not report.is_complete
        assert not report.detected

    def test_separation_ratio_and_anomaly_index(self):
        sizes = [3.0] + [12.0] * 9
        report = DetectionReport.decide(results(sizes), 9.5, GanLossWeights())
        assert report.separation_ratio() == pytest.approx(0.25)
        # 모든 비대상 클래스가 같아 MAD 가 0
        assert report.anomaly_index() is None

    def test_anomaly_index(self):
        sizes = [2.0, 10.0, 11.0, 12.0, 9.0]
        report = DetectionReport.decide(results(sizes), 9.5, GanLossWeights())
        # 중앙값 10, 편차 중앙값 1
        assert report.anomaly_index() == pytest.approx(8.0 / 1.4826)

    def test_dict_round_trip(self):
        report = DetectionReport.decide(results([12.0, 3.0, 11.0]), 9.5, GanLossWeights(2.0, 0.5), seed=4)
        restored = DetectionReport.from_dict(report.to_dict())
        assert restored.detected_class == 1
        assert restored.weights == GanLossWeights(2.0, 0.5)
        assert restored.seed == 4
        assert [r.mean_pert_size for r in restored.per_class] == [12.0, 3.0, 11.0]

    def test_negative_size_rejected(self):
        with pytest.raises(ValueError):
            ReverseResult(assumed_class=0, mean_pert_size=-1.0)


def sweep(retentions):
    fractions, epochs = [0.10, 0.05], [10, 40]
    cells = [SweepCell(f, e, 0.98, r) for (f, e), r in zip([(f, e) for f in fractions for e in epochs], retentions)]
    return SweepTable(fractions, epochs, cells)


class TestSweepTable:
    def test_monotone_table(self):
        table = sweep([0.10, 0.01, 0.30, 0.05])
        assert table.retention_non_increasing_in_epochs()
        assert table.retention_non_decreasing_as_data_shrinks(10)
        assert table.retention_non_decreasing_as_data_shrinks(40)

    def test_retention_rising_with_epochs(self):
        assert not sweep([0.01, 0.20, 0.30, 0.05]).retention_non_increasing_in_epochs()

    def test_csv_and_text(self):
        table = sweep([0.10, 0.01, 0.30, 0.05])
        csv_lines = table.to_csv().strip().splitlines()
        assert csv_lines[0] == "watermark,data_fraction,epochs,accuracy,retention"
        assert len(csv_lines) == 5
        text = table.to_text()
        assert text.splitlines()[1].startswith("10%")
        assert table.cell(0.05, 40).retention == 0.05


class TestSerialization:
    def test_evaluation_rates_are_checked(self):
        with pytest.raises(ValueError):
            EvaluationReport(basic_accuracy=1.2, basic_retention=1.0)

    def test_evaluation_accuracy_drop(self):
        report = EvaluationReport(basic_accuracy=0.99, basic_retention=1.0, post_accuracy=0.97, post_retention=0.0)
        assert report.accuracy_drop == pytest.approx(0.02)
        assert EvaluationReport.from_dict(report.to_dict()) == report

    def test_evaluation_csv(self):
        report = EvaluationReport(basic_accuracy=0.99, basic_retention=1.0)
        header, row = report.to_csv().strip().splitlines()
        assert "post_accuracy" in header
        assert row.startswith("mnist,white_square,0.99,1.0,,")

    def test_watermark_spec_save_load(self, tmp_path):
        mask = torch.zeros(1, 28, 28)
        mask[0, 23:27, 23:27] = 1.0
        spec = WatermarkSpec(TriggerPattern(stencil=mask.clone(), mask=mask), target_class=7, poison_rate=0.05)
        restored = WatermarkSpec.load(spec.save(str(tmp_path / "spec.pt")))
        assert torch.equal(restored.trigger.mask, spec.trigger.mask)
        assert restored.target_class == 7
        assert restored.to_dict() == spec.to_dict()

    def test_trigger_stencil_is_masked(self):
        trigger = TriggerPattern(stencil=torch.ones(1, 4, 4), mask=torch.zeros(1, 4, 4))
        assert trigger.is_empty
        assert trigger.stencil.sum().item() == 0.0
        assert trigger.bounding_box() is None

    def test_manifest_round_trip(self):
        manifest = RunManifest(command="detect", config={"seed": 0}, config_digest="abc", seeds={"seed": 0},
                               run_dir="runs/x", artifacts=[ArtifactRecord("report", "runs/x/r.json", "f" * 64, 10)])
        restored = RunManifest.from_dict(manifest.to_dict())
        assert restored.artifacts == manifest.artifacts
        assert restored.status == "running"
        assert restored.outcome is None

        manifest.outcome = "removal skipped"
        assert RunManifest.from_dict(manifest.to_dict()).outcome == "removal skipped"

    def test_train_config_validation(self):
        with pytest.raises(ValueError):
            TrainConfig(batch_size=0)
        assert TrainConfig.from_dict(TrainConfig(epochs=3).to_dict()).epochs == 3

"""
터미널 UI 렌더링 테스트 (rich 녹화 콘솔)
"""

import pytest
from rich.console import Console

from src.Entity import (
    ReverseResult,
    DetectionReport,
    GanLossWeights,
    EvaluationReport,
    SweepCell,
    SweepTable,
    RunManifest,
    ArtifactRecord
)
from src.Service import EvalService, ModelService
from src.UI import TerminalUIService


@pytest.fixture
def ui() -> TerminalUIService:
    return TerminalUIService(console=Console(record=True, width=160, color_system=None))


def test_detection_table_marks_outlier_and_gap(ui, data_service):
    per_class = [ReverseResult(assumed_class=c, mean_pert_size=2.5 if c == 7 else 12.0) for c in range(9)]
    per_class.append(ReverseResult(assumed_class=9, error="GAN diverged"))
    report = DetectionReport.decide(per_class, 9.5, GanLossWeights())
    table = EvalService(data_service, ModelService(device='cpu')).perturbation_table(report)

    ui.display_detection(report, table)

    text = ui.console.export_text()
    assert "2.500" in text
    assert "outlier" in text
    assert "GAN diverged" in text
    assert "대상 클래스 7" in text


def test_evaluation_and_sweep(ui):
    ui.display_evaluation(EvaluationReport(basic_accuracy=0.99, basic_retention=1.0,
                                           post_accuracy=0.97, post_retention=0.02))
    ui.display_sweep(SweepTable([0.1], [10], [SweepCell(0.1, 10, 0.98, 0.03)]))
    text = ui.console.export_text()
    assert "99.00%" in text
    assert "2.00 points" in text
    assert "ret@10" in text


def test_manifest_and_messages(ui):
    manifest = RunManifest(command="embed", config={}, config_digest="d", seeds={"seed": 0}, run_dir="runs/x",
                           artifacts=[ArtifactRecord("checkpoint", "runs/x/m.pt", "a" * 64)], status="completed")
    ui.display_manifest(manifest)
    ui.display_warning("careful")
    ui.display_error("broken")
    text = ui.console.export_text()
    assert "checkpoint" in text
    assert "aaaaaaaaaaaa" in text
    assert "careful" in text and "broken" in text


def test_task_lifecycle(ui):
    ui.start_task("training", 2)
    ui.advance_task("epoch 1")
    ui.advance_task("epoch 2")
    ui.finish_task()
    ui.finish_task()
    assert ui._progress is None


def test_manifest_outcome_is_shown(ui):
    manifest = RunManifest(command="pipeline", config={}, config_digest="d", seeds={"seed": 0}, run_dir="runs/p",
                           status="completed", outcome="no watermark detected; removal skipped")
    ui.display_manifest(manifest)
    assert "removal skipped" in ui.console.export_text()

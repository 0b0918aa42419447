"""
평가 서비스 구현 - 테스트 정확도, 워터마크 유지율, 섭동 크기 표, 보고서 렌더링
"""

import html
from typing import Dict, Optional

import torch
import torch.nn as nn

from ..IService import IEvalService
from ..Entity import (
    ImageBatch,
    WatermarkSpec,
    TriggerPattern,
    DetectionReport,
    EvaluationReport,
    PerturbationTable
)
from ..Utils import LoggerMixin
from ..Utils.image_io import png_data_uri
from .data_service import DataService
from .model_service import ModelService


def energy_fraction_in_region(perturbation: torch.Tensor, trigger: TriggerPattern) -> Optional[float]:
    """실제 트리거 중심이 속한 사분면에 놓인 섭동 L2 에너지의 비율"""
    box = trigger.bounding_box()
    if box is None:
        return None
    if perturbation.dim() == 4:
        perturbation = perturbation[0]
    energy = perturbation.detach().double().pow(2).sum(dim=0)
    total = float(energy.sum().item())
    if total == 0.0:
        return None

    height, width = energy.shape
    center_row = (box[0] + box[1] - 1) / 2.0
    center_col = (box[2] + box[3] - 1) / 2.0
    rows = slice(0, height // 2) if center_row < height / 2 else slice(height // 2, height)
    cols = slice(0, width // 2) if center_col < width / 2 else slice(width // 2, width)
    return float(energy[rows, cols].sum().item()) / total


class EvalService(IEvalService, LoggerMixin):
    """평가 서비스 구현 클래스"""

    def __init__(
        self,
        data_service: Optional[DataService] = None,
        model_service: Optional[ModelService] = None,
        exclude_target_class: bool = False,
        batch_size: int = 512
    ):
        self.data_service = data_service or DataService()
        self.model_service = model_service or ModelService()
        self.exclude_target_class = exclude_target_class
        self.batch_size = batch_size

    def test_accuracy(self, model: nn.Module, test: ImageBatch) -> float:
        """argmax 예측 == 라벨 비율"""
        _, predictions = self.model_service.predict(model, test, self.batch_size)
        return float((predictions == test.labels).double().mean().item())

    def fire_rate(self, model: nn.Module, batch: ImageBatch, target_class: int) -> float:
        """대상 클래스로 예측된 비율"""
        _, predictions = self.model_service.predict(model, batch, self.batch_size)
        return float((predictions == target_class).double().mean().item())

    def retention_rate(
        self,
        model: nn.Module,
        clean_test: ImageBatch,
        spec: WatermarkSpec,
        exclude_target_class: Optional[bool] = None
    ) -> float:
        """S_y / S (스탬핑된 테스트 이미지 중 대상 클래스 예측 비율)"""
        exclude = self.exclude_target_class if exclude_target_class is None else exclude_target_class
        if exclude:
            clean_test = clean_test.where_label_not(spec.target_class)
        stamped = self.data_service.stamp(clean_test, spec.trigger)
        rate = self.fire_rate(model, stamped, spec.target_class)
        self.logger.info(f"워터마크 유지율: {rate:.4f} (S={len(stamped)}, 대상 클래스 {spec.target_class})")
        return rate

    def perturbation_table(self, report: DetectionReport) -> PerturbationTable:
        """클래스별 섭동 크기 (임계값 미만 이상치 표시, 누락은 빈칸)"""
        if not report.is_complete:
            self.logger.warning(f"불완전한 탐지 보고서: 누락 클래스 {report.incomplete_classes}")
        outliers = set(report.outlier_classes)
        results = sorted(report.per_class, key=lambda r: r.assumed_class)
        return PerturbationTable(
            classes=[r.assumed_class for r in results],
            values=[r.mean_pert_size if r.complete else None for r in results],
            flagged=[r.assumed_class in outliers for r in results],
            threshold_T=report.threshold_T
        )

    def render_html(
        self,
        evaluation: EvaluationReport,
        table: Optional[PerturbationTable] = None,
        trigger_pngs: Optional[Dict[int, str]] = None,
        title: str = "wmforge summary"
    ) -> str:
        """정적 HTML 요약 (트리거 PNG 는 data URI 로 삽입)"""
        rows = []
        for key, value in evaluation.to_dict().items():
            if key == "extras":
                continue
            shown = "" if value is None else (f"{value:.4%}" if isinstance(value, float) else str(value))
            rows.append(f"<tr><th>{html.escape(key)}</th><td>{html.escape(shown)}</td></tr>")
        for key, value in evaluation.extras.items():
            rows.append(f"<tr><th>{html.escape(str(key))}</th><td>{html.escape(str(value))}</td></tr>")

        parts = [
            "<!DOCTYPE html>",
            f"<html><head><meta charset=\"utf-8\"><title>{html.escape(title)}</title>",
            "<style>body{font-family:sans-serif}td,th{border:1px solid #999;padding:4px 8px}"
            ".outlier{background:#fdd;font-weight:bold}img{image-rendering:pixelated}</style></head><body>",
            f"<h1>{html.escape(title)}</h1>",
            "<h2>Evaluation</h2><table>" + "".join(rows) + "</table>"
        ]

        if table is not None:
            header = "".join(f"<th>{c}</th>" for c in table.classes)
            cells = []
            for value, flag in zip(table.values, table.flagged):
                text = "--" if value is None else f"{value:.3f}"
                css = " class=\"outlier\"" if flag else ""
                cells.append(f"<td{css}>{text}</td>")
            parts.append("<h2>Perturbation size</h2>")
            parts.append(f"<table><tr><th>Class</th>{header}</tr><tr><th>size</th>{''.join(cells)}</tr></table>")
            parts.append(f"<p>threshold T = {table.threshold_T}</p>")

        if trigger_pngs:
            parts.append("<h2>Reversed triggers</h2><div>")
            for assumed_class, path in sorted(trigger_pngs.items()):
                parts.append(
                    f"<figure style=\"display:inline-block\"><img src=\"{png_data_uri(path)}\" "
                    f"alt=\"class {assumed_class}\"><figcaption>class {assumed_class}</figcaption></figure>")
            parts.append("</div>")

        parts.append("</body></html>")
        return "\n".join(parts) + "\n"

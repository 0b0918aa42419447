"""
평가 보고서 / 표 엔티티
"""

import io
import csv
from dataclasses import dataclass, field
from typing import Dict, List, Any, Optional


def _check_rate(name: str, value: Optional[float]) -> None:
    if value is not None and not 0.0 <= value <= 1.0:
        raise ValueError(f"{name} must lie in [0,1], got {value}")


@dataclass
class EvaluationReport:
    """제거 전후 정확도 / 워터마크 유지율 보고서"""
    basic_accuracy: float
    basic_retention: float
    post_accuracy: Optional[float] = None
    post_retention: Optional[float] = None
    dataset: str = "mnist"
    watermark_type: str = "white_square"
    config_digest: str = ""
    extras: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        for name in ("basic_accuracy", "basic_retention", "post_accuracy", "post_retention"):
            _check_rate(name, getattr(self, name))

    @property
    def accuracy_drop(self) -> Optional[float]:
        if self.post_accuracy is None:
            return None
        return self.basic_accuracy - self.post_accuracy

    def to_dict(self) -> Dict[str, Any]:
        """딕셔너리로 변환"""
        return {
            "dataset": self.dataset,
            "watermark_type": self.watermark_type,
            "basic_accuracy": self.basic_accuracy,
            "basic_retention": self.basic_retention,
            "post_accuracy": self.post_accuracy,
            "post_retention": self.post_retention,
            "accuracy_drop": self.accuracy_drop,
            "config_digest": self.config_digest,
            "extras": self.extras
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'EvaluationReport':
        """딕셔너리에서 생성"""
        return cls(
            basic_accuracy=data["basic_accuracy"],
            basic_retention=data["basic_retention"],
            post_accuracy=data.get("post_accuracy"),
            post_retention=data.get("post_retention"),
            dataset=data.get("dataset", "mnist"),
            watermark_type=data.get("watermark_type", "white_square"),
            config_digest=data.get("config_digest", ""),
            extras=data.get("extras", {})
        )

    def to_csv(self) -> str:
        """한 행짜리 CSV"""
        row = {k: v for k, v in self.to_dict().items() if k != "extras"}
        buffer = io.StringIO()
        writer = csv.DictWriter(buffer, fieldnames=list(row))
        writer.writeheader()
        writer.writerow({k: "" if v is None else v for k, v in row.items()})
        return buffer.getvalue()


@dataclass
class PerturbationTable:
    """클래스별 섭동 크기 표 (K 열, 이상치 표시)"""
    classes: List[int]
    values: List[Optional[float]]
    flagged: List[bool]
    threshold_T: float = 9.5

    @property
    def gaps(self) -> List[int]:
        return [c for c, v in zip(self.classes, self.values) if v is None]

    def to_text(self, precision: int = 3) -> str:
        """일반 텍스트 렌더링 (이상치는 *값*, 누락은 --)"""
        header = ["Class"] + [str(c) for c in self.classes]
        row = ["Perturbation size"]
        for value, flag in zip(self.values, self.flagged):
            if value is None:
                row.append("--")
            else:
                cell = f"{value:.{precision}f}"
                row.append(f"*{cell}*" if flag else cell)
        widths = [max(len(h), len(r)) for h, r in zip(header, row)]
        lines = [
            " | ".join(h.rjust(w) for h, w in zip(header, widths)),
            "-+-".join("-" * w for w in widths),
            " | ".join(r.rjust(w) for r, w in zip(row, widths)),
            f"threshold T = {self.threshold_T}; * marks perturbation outliers; -- marks missing classes"
        ]
        return "\n".join(lines) + "\n"

    def to_csv(self) -> str:
        """기계 판독용 CSV (class, mean_pert_size, outlier)"""
        buffer = io.StringIO()
        writer = csv.writer(buffer)
        writer.writerow(["class", "mean_pert_size", "outlier"])
        for c, v, f in zip(self.classes, self.values, self.flagged):
            writer.writerow([c, "" if v is None else repr(float(v)), int(f)])
        return buffer.getvalue()

    @classmethod
    def from_csv(cls, text: str, threshold_T: float = 9.5) -> 'PerturbationTable':
        """CSV 에서 복원"""
        reader = csv.DictReader(io.StringIO(text))
        classes, values, flagged = [], [], []
        for row in reader:
            classes.append(int(row["class"]))
            values.append(float(row["mean_pert_size"]) if row["mean_pert_size"] else None)
            flagged.append(bool(int(row["outlier"])))
        return cls(classes=classes, values=values, flagged=flagged, threshold_T=threshold_T)


@dataclass
class SweepCell:
    """제거 스윕의 한 칸 (데이터 비율 x 에폭)"""
    data_fraction: float
    epochs: int
    accuracy: float
    retention: float

    def to_dict(self) -> Dict[str, Any]:
        return {
            "data_fraction": self.data_fraction,
            "epochs": self.epochs,
            "accuracy": self.accuracy,
            "retention": self.retention
        }


@dataclass
class SweepTable:
    """데이터 비율 x 에폭 제거 스윕 결과"""
    fractions: List[float]
    epochs: List[int]
    cells: List[SweepCell] = field(default_factory=list)
    watermark_type: str = "white_square"

    def cell(self, fraction: float, epochs: int) -> Optional[SweepCell]:
        for c in self.cells:
            if c.data_fraction == fraction and c.epochs == epochs:
                return c
        return None

    def retention_non_increasing_in_epochs(self, margin: float = 0.02) -> bool:
        """같은 데이터 비율에서 에폭이 늘수록 유지율이 (margin 내에서) 줄어드는지"""
        for fraction in self.fractions:
            series = [self.cell(fraction, e) for e in sorted(self.epochs)]
            rates = [c.retention for c in series if c is not None]
            if any(later > earlier + margin for earlier, later in zip(rates, rates[1:])):
                return False
        return True

    def retention_non_decreasing_as_data_shrinks(self, epochs: int, margin: float = 0.0) -> bool:
        """고정 에폭에서 데이터가 줄수록 유지율이 늘어나는지"""
        series = [self.cell(f, epochs) for f in sorted(self.fractions, reverse=True)]
        rates = [c.retention for c in series if c is not None]
        return all(later + margin >= earlier for earlier, later in zip(rates, rates[1:]))

    def to_csv(self) -> str:
        """CSV (watermark, data_fraction, epochs, accuracy, retention)"""
        buffer = io.StringIO()
        writer = csv.writer(buffer)
        writer.writerow(["watermark", "data_fraction", "epochs", "accuracy", "retention"])
        for c in self.cells:
            writer.writerow([self.watermark_type, c.data_fraction, c.epochs, c.accuracy, c.retention])
        return buffer.getvalue()

    def to_text(self) -> str:
        """비율별 행, 에폭별 정확도/유지율 열"""
        epochs = sorted(self.epochs)
        header = ["data"] + [f"acc@{e}" for e in epochs] + [f"ret@{e}" for e in epochs]
        lines = ["\t".join(header)]
        for fraction in sorted(self.fractions, reverse=True):
            row = [f"{fraction:.0%}"]
            for attr in ("accuracy", "retention"):
                for e in epochs:
                    c = self.cell(fraction, e)
                    row.append("--" if c is None else f"{getattr(c, attr):.2%}")
            lines.append("\t".join(row))
        return "\n".join(lines) + "\n"

    def to_dict(self) -> Dict[str, Any]:
        return {
            "watermark_type": self.watermark_type,
            "fractions": self.fractions,
            "epochs": self.epochs,
            "cells": [c.to_dict() for c in self.cells]
        }

"""
터미널 UI 서비스 구현
"""

import platform
import logging
from datetime import datetime
from typing import Optional

import colorama
from rich.console import Console
from rich.panel import Panel
from rich.text import Text
from rich.table import Table
from rich.progress import Progress, SpinnerColumn, TextColumn, BarColumn, TimeElapsedColumn, TaskID

from ..IService import IUIService
from ..Entity import DetectionReport, EvaluationReport, PerturbationTable, SweepTable, RunManifest
from ..Config import config

# Windows 호환성을 위한 colorama 초기화
colorama.init()

logger = logging.getLogger(__name__)


def _percent(value: Optional[float]) -> str:
    return "--" if value is None else f"{value:.2%}"


class TerminalUIService(IUIService):
    """터미널 UI 서비스 구현 클래스"""

    def __init__(self, console: Optional[Console] = None):
        self.console = console or Console()
        self.platform = platform.system()
        self.session_start = datetime.now()
        self._progress: Optional[Progress] = None
        self._task: Optional[TaskID] = None

        # 색상 테마 (설정에서 가져오기)
        self.colors = {
            "primary": config.ui.theme,
            "secondary": "cyan",
            "success": "green",
            "warning": "yellow",
            "error": "red",
            "info": "blue",
            "outlier": "bold red"
        }

    def display_banner(self, command: str, run_dir: str) -> None:
        """명령 시작 배너"""
        title = Text()
        title.append("wmforge ", style=f"bold {self.colors['primary']}")
        title.append(command, style=f"bold {self.colors['secondary']}")

        body = (
            f"🖥️  시스템: {self.platform} {platform.release()}\n"
            f"⏰ 시작 시간: {self.session_start.strftime('%Y-%m-%d %H:%M:%S')}\n"
            f"📁 실행 디렉토리: {run_dir}"
        )
        self.console.print(Panel(body, title=title, border_style=self.colors["primary"], padding=(0, 2)))
        logger.info(f"{command} 시작: {run_dir}")

    def display_error(self, error_message: str) -> None:
        """에러 메시지 표시"""
        self.console.print(f"[{self.colors['error']}]❌ 오류: {error_message}[/{self.colors['error']}]")
        logger.error(error_message)

    def display_success(self, success_message: str) -> None:
        """성공 메시지 표시"""
        self.console.print(f"[{self.colors['success']}]✅ {success_message}[/{self.colors['success']}]")
        logger.info(success_message)

    def display_warning(self, warning_message: str) -> None:
        """경고 메시지 표시"""
        self.console.print(f"[{self.colors['warning']}]⚠️  {warning_message}[/{self.colors['warning']}]")
        logger.warning(warning_message)

    def display_info(self, info_message: str) -> None:
        """정보 메시지 표시"""
        self.console.print(f"[{self.colors['info']}]ℹ️  {info_message}[/{self.colors['info']}]")
        logger.info(info_message)

    def start_task(self, description: str, total: int) -> None:
        """진행 표시줄 시작 (UI_SHOW_PROGRESS=false 면 생략)"""
        self.finish_task()
        if not config.ui.show_progress:
            return
        self._progress = Progress(
            SpinnerColumn(),
            TextColumn("[progress.description]{task.description}"),
            BarColumn(),
            TextColumn("{task.completed}/{task.total}"),
            TextColumn("{task.fields[status]}"),
            TimeElapsedColumn(),
            console=self.console,
            transient=True
        )
        self._progress.start()
        self._task = self._progress.add_task(description, total=max(total, 1), status="")

    def advance_task(self, status: str = "") -> None:
        if self._progress is not None and self._task is not None:
            self._progress.update(self._task, advance=1, status=status)

    def finish_task(self) -> None:
        if self._progress is not None:
            self._progress.stop()
        self._progress = None
        self._task = None

    def display_detection(self, report: DetectionReport, table: PerturbationTable) -> None:
        """섭동 크기 표 + 판정"""
        perturbation_table = Table(title="🔍 클래스별 섭동 크기", show_header=True, header_style="bold cyan")
        perturbation_table.add_column("Class", style="cyan", justify="right")
        perturbation_table.add_column("Perturbation size", justify="right")
        perturbation_table.add_column("Attack success", justify="right")
        perturbation_table.add_column("Note", style="white")

        for assumed_class, value, flagged in zip(table.classes, table.values, table.flagged):
            result = report.result_for(assumed_class)
            if value is None:
                perturbation_table.add_row(str(assumed_class), "--", "--",
                                           f"[{self.colors['error']}]{result.error if result else 'missing'}")
                continue
            cell = f"{value:.3f}"
            note = ""
            if flagged:
                cell = f"[{self.colors['outlier']}]{cell}[/{self.colors['outlier']}]"
                note = "outlier"
            perturbation_table.add_row(str(assumed_class), cell, _percent(result.attack_success_rate), note)

        self.console.print(perturbation_table)
        self.console.print(f"threshold T = {report.threshold_T}")

        ratio = report.separation_ratio()
        if ratio is not None:
            self.console.print(f"separation ratio = {ratio:.3f}")
        index = report.anomaly_index()
        if index is not None:
            self.console.print(f"anomaly index = {index:.3f}")

        if report.detected:
            self.display_warning(f"워터마크 탐지: 대상 클래스 {report.detected_class}")
        else:
            self.display_info("워터마크가 탐지되지 않았습니다.")
        if report.incomplete_classes:
            self.display_warning(f"결과가 없는 클래스: {report.incomplete_classes}")

    def display_evaluation(self, report: EvaluationReport) -> None:
        """제거 전후 지표 표"""
        table = Table(title=f"📊 평가 ({report.dataset}, {report.watermark_type})", show_header=True,
                      header_style="bold cyan")
        table.add_column("Metric", style="cyan")
        table.add_column("Before", justify="right")
        table.add_column("After", justify="right")
        table.add_row("Test accuracy", _percent(report.basic_accuracy), _percent(report.post_accuracy))
        table.add_row("Watermark retention", _percent(report.basic_retention), _percent(report.post_retention))
        self.console.print(table)

        if report.accuracy_drop is not None:
            self.console.print(f"accuracy drop = {report.accuracy_drop * 100:.2f} points")
        for key, value in report.extras.items():
            self.console.print(f"{key} = {value}")

    def display_sweep(self, table: SweepTable) -> None:
        """데이터 비율 x 에폭 표"""
        epochs = sorted(table.epochs)
        sweep_table = Table(title=f"🧹 제거 스윕 ({table.watermark_type})", show_header=True,
                            header_style="bold cyan")
        sweep_table.add_column("Data", style="cyan", justify="right")
        for e in epochs:
            sweep_table.add_column(f"acc@{e}", justify="right")
        for e in epochs:
            sweep_table.add_column(f"ret@{e}", justify="right")

        for fraction in sorted(table.fractions, reverse=True):
            row = [f"{fraction:.0%}"]
            for attr in ("accuracy", "retention"):
                for e in epochs:
                    cell = table.cell(fraction, e)
                    row.append("--" if cell is None else _percent(getattr(cell, attr)))
            sweep_table.add_row(*row)
        self.console.print(sweep_table)

    def display_manifest(self, manifest: RunManifest) -> None:
        """산출물 목록"""
        table = Table(title="📦 산출물", show_header=True, header_style="bold cyan")
        table.add_column("Role", style="cyan")
        table.add_column("Path", style="white")
        table.add_column("sha256", style="dim")
        for artifact in manifest.artifacts:
            table.add_row(artifact.role, artifact.path, artifact.sha256[:12])
        self.console.print(table)
        status = manifest.status if not manifest.outcome else f"{manifest.status}, {manifest.outcome}"
        self.console.print(f"manifest: {manifest.run_dir}/manifest.json ({status})")

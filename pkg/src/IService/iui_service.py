"""
UI 서비스 인터페이스
"""

from abc import ABC, abstractmethod

from ..Entity import (
    DetectionReport,
    EvaluationReport,
    PerturbationTable,
    SweepTable,
    RunManifest
)


class IUIService(ABC):
    """UI 서비스 인터페이스"""

    @abstractmethod
    def display_banner(self, command: str, run_dir: str) -> None:
        """명령 시작 배너 표시"""
        pass

    @abstractmethod
    def display_error(self, error_message: str) -> None:
        """에러 메시지 표시"""
        pass

    @abstractmethod
    def display_success(self, success_message: str) -> None:
        """성공 메시지 표시"""
        pass

    @abstractmethod
    def display_warning(self, warning_message: str) -> None:
        """경고 메시지 표시"""
        pass

    @abstractmethod
    def display_info(self, info_message: str) -> None:
        """정보 메시지 표시"""
        pass

    @abstractmethod
    def start_task(self, description: str, total: int) -> None:
        """진행 표시줄 시작"""
        pass

    @abstractmethod
    def advance_task(self, status: str = "") -> None:
        """진행 표시줄 한 단계 진행"""
        pass

    @abstractmethod
    def finish_task(self) -> None:
        """진행 표시줄 종료"""
        pass

    @abstractmethod
    def display_detection(self, report: DetectionReport, table: PerturbationTable) -> None:
        """탐지 결과와 섭동 크기 표 표시"""
        pass

    @abstractmethod
    def display_evaluation(self, report: EvaluationReport) -> None:
        """평가 보고서 표시"""
        pass

    @abstractmethod
    def display_sweep(self, table: SweepTable) -> None:
        """제거 스윕 표 표시"""
        pass

    @abstractmethod
    def display_manifest(self, manifest: RunManifest) -> None:
        """실행 매니페스트 요약 표시"""
        pass

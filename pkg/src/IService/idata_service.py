"""
데이터 서비스 인터페이스
"""

from abc import ABC, abstractmethod

from ..Entity import ImageBatch, TriggerPattern, WatermarkSpec


class IDataService(ABC):
    """데이터셋 로드 / 트리거 스탬핑 / 샘플링 인터페이스"""

    @abstractmethod
    def load_dataset(self, name: str, split: str) -> ImageBatch:
        """데이터셋 분할 전체 로드 ([0,1] 픽셀)"""
        pass

    @abstractmethod
    def stamp(self, batch: ImageBatch, trigger: TriggerPattern) -> ImageBatch:
        """트리거를 모든 이미지에 덮어쓰기"""
        pass

    @abstractmethod
    def make_watermark_set(self, train: ImageBatch, spec: WatermarkSpec, seed: int) -> ImageBatch:
        """포이즌 비율만큼 샘플을 스탬핑하고 대상 클래스로 라벨링"""
        pass

    @abstractmethod
    def subsample(self, train: ImageBatch, fraction: float, seed: int) -> ImageBatch:
        """비복원 균등 부분 샘플"""
        pass

"""
난수 시드 및 장치 선택
"""

import random
import logging

import numpy as np
import torch

logger = logging.getLogger(__name__)


def seed_everything(seed: int) -> None:
    """python / numpy / torch 난수 생성기 동시 고정"""
    random.seed(seed)
    np.random.seed(seed % (2 ** 32))
    torch.manual_seed(seed)
    if torch.cuda.is_available():
        torch.cuda.manual_seed_all(seed)


def make_generator(seed: int) -> torch.Generator:
    """시드가 고정된 독립 CPU 난수 생성기"""
    generator = torch.Generator()
    generator.manual_seed(seed)
    return generator


def resolve_device(name: str = "auto") -> torch.device:
    """설정 문자열을 torch.device 로 변환"""
    if name == "auto":
        name = "cuda" if torch.cuda.is_available() else "cpu"
    if name.startswith("cuda") and not torch.cuda.is_available():
        logger.warning("CUDA 장치를 사용할 수 없어 CPU 로 대체합니다.")
        name = "cpu"
    return torch.device(name)

"""
wmforge - 백도어 워터마크 삽입 / 탐지 / 제거 실험 도구
Layered modular architecture
"""

__version__ = "1.0.0"
__author__ = "wmforge Team"
__description__ = "Embed, reverse and remove backdoor-based watermarks in small image classifiers"

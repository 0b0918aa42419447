"""
Controller layer for wmforge
"""

from .watermark_controller import WatermarkController, RunContext, COMMANDS

__all__ = [
    'WatermarkController',
    'RunContext',
    'COMMANDS'
]

"""
UI implementations for wmforge
"""

from .terminal_ui import TerminalUIService

__all__ = [
    'TerminalUIService'
]

"""
Utilitários do sistema.
"""
from .logger import setup_logger, logger, sweep_logger

__all__ = ["setup_logger", "logger", "sweep_logger"]

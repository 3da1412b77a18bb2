"""
Módulo da linha de comando.
"""
from .handlers import CliHandlers
from .messages import CliMessages
from .run_config import RunConfig

__all__ = ["CliHandlers", "CliMessages", "RunConfig"]

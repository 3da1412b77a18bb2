"""
Configuração centralizada de logging.

Logs vão para stderr (e opcionalmente para LOG_FILE); stdout fica livre
para as séries e CSVs que a CLI imprime.
"""
import logging
import sys

from config.settings import LOG_FILE, LOG_FORMAT, LOG_LEVEL


def setup_logger(name: str = __name__) -> logging.Logger:
    """
    Configura e retorna um logger.

    Args:
        name: Nome do logger; filhos ("travessia.sweep") herdam os handlers

    Returns:
        Logger configurado
    """
    handlers = [logging.StreamHandler(sys.stderr)]
    if LOG_FILE:
        handlers.append(logging.FileHandler(LOG_FILE, encoding="utf-8"))
    logging.basicConfig(
        level=getattr(logging, LOG_LEVEL.upper(), logging.INFO),
        format=LOG_FORMAT,
        handlers=handlers,
    )
    return logging.getLogger(name)


# Logger global
logger = setup_logger("travessia")
# um registro por movimento: só aparece com LOG_LEVEL=DEBUG
sweep_logger = logger.getChild("sweep")

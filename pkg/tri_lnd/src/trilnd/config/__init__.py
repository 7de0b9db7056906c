"""
trilnd Configuration Package
============================

Settings, logging e inizializzazione globale.
"""

from .logging_config import LogConfig, TrilndLoggerAdapter, get_logger, setup_logging
from .settings import TrilndSettings, get_settings, set_settings


def initialize_trilnd(settings: TrilndSettings = None):
    """
    Inizializza settings e logging a partire dalla configurazione globale.
    """
    settings = settings or get_settings()
    logger = setup_logging(
        LogConfig(
            level=settings.log_level,
            log_to_file=settings.log_to_file,
            log_file_path=settings.log_file_path,
        )
    )
    logger.stage(
        f"Limiti: nilpotency_bound={settings.nilpotency_bound}, degree_cap={settings.degree_cap}",
        stage="cli",
    )
    return settings, logger


__all__ = [
    "LogConfig",
    "TrilndLoggerAdapter",
    "TrilndSettings",
    "get_logger",
    "get_settings",
    "initialize_trilnd",
    "set_settings",
    "setup_logging",
]

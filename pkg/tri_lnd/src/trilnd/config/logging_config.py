"""
trilnd Logging Configuration
============================

Logging della pipeline: simboli per stadio, colori ANSI su terminale e campi
extra (stadio, primo, variabile). I log vanno su stderr: stdout e' riservato
ai rapporti.
"""

import logging
import logging.handlers
import sys
from dataclasses import dataclass
from datetime import datetime
from pathlib import Path
from typing import Any, Dict, Optional


@dataclass
class LogConfig:
    """Configurazione logging trilnd"""
    level: str = "WARNING"
    log_to_console: bool = True
    log_to_file: bool = False
    log_file_path: str = "logs/trilnd.log"
    max_file_size: int = 10 * 1024 * 1024  # 10MB
    backup_count: int = 5


class TrilndFormatter(logging.Formatter):
    """
    Formatter per trilnd
    Aggiunge simboli per stadio e colori per livello
    """

    SYMBOLS = {
        'groebner': 'G',
        'derivation': 'D',
        'plinth': 'P',
        'rank': 'R',
        'triangulate': 'T',
        'factorization': 'F',
        'reader': 'I',
        'cli': '>',
        'error': '!',
        'warning': '?',
        'info': '-',
        'debug': '.',
    }

    COLORS = {
        'DEBUG': '\033[36m',      # Cyan
        'INFO': '\033[37m',       # White
        'WARNING': '\033[33m',    # Yellow
        'ERROR': '\033[31m',      # Red
        'CRITICAL': '\033[35m',   # Magenta
        'RESET': '\033[0m',
    }

    def __init__(self, use_colors: bool = True):
        self.use_colors = use_colors
        super().__init__()

    def format(self, record: logging.LogRecord) -> str:
        stage = getattr(record, 'stage', None) or self._get_stage(record)
        symbol = self.SYMBOLS.get(stage, self.SYMBOLS.get(record.levelname.lower(), ' '))

        timestamp = datetime.fromtimestamp(record.created).strftime('%H:%M:%S.%f')[:-3]

        extra_info = ""
        if hasattr(record, 'stage'):
            extra_info += f" [Stage:{record.stage}]"
        if hasattr(record, 'prime'):
            extra_info += f" [Prime:{record.prime}]"
        if hasattr(record, 'variable'):
            extra_info += f" [Var:{record.variable}]"

        base_format = f"{symbol} {timestamp} [{record.levelname:8}] {record.name:24}{extra_info} | {record.getMessage()}"

        if self.use_colors and hasattr(sys.stderr, 'isatty') and sys.stderr.isatty():
            color = self.COLORS.get(record.levelname, self.COLORS['INFO'])
            base_format = f"{color}{base_format}{self.COLORS['RESET']}"

        if record.exc_info:
            base_format += "\n" + self.formatException(record.exc_info)

        return base_format

    def _get_stage(self, record: logging.LogRecord) -> str:
        """Stadio dedotto dal nome del modulo"""
        module = record.name.rsplit('.', 1)[-1].lower()
        if module in self.SYMBOLS:
            return module
        return record.levelname.lower()


class TrilndLoggerAdapter(logging.LoggerAdapter):
    """
    Adapter per aggiungere contesto della pipeline ai log
    """

    def process(self, msg: str, kwargs: Dict[str, Any]) -> tuple:
        return msg, kwargs

    def stage(self, msg: str, stage: Optional[str] = None, **kwargs):
        """Log di uno stadio della pipeline"""
        extra = kwargs.get('extra', {})
        if stage:
            extra['stage'] = stage
        kwargs['extra'] = extra
        self.info(msg, **kwargs)

    def prime(self, msg: str, prime: Optional[str] = None, **kwargs):
        """Log relativo a un fattore primo di c(u)"""
        extra = kwargs.get('extra', {})
        if prime:
            extra['prime'] = prime
        kwargs['extra'] = extra
        self.info(msg, **kwargs)


def setup_logging(config: Optional[LogConfig] = None) -> TrilndLoggerAdapter:
    """
    Configura il logger "trilnd"

    Args:
        config: Configurazione logging (usa default se None)

    Returns:
        TrilndLoggerAdapter: Logger principale configurato
    """
    if config is None:
        config = LogConfig()

    logger = logging.getLogger("trilnd")
    logger.setLevel(getattr(logging, config.level.upper()))
    logger.propagate = False

    for handler in logger.handlers[:]:
        logger.removeHandler(handler)

    if config.log_to_console:
        console_handler = logging.StreamHandler(sys.stderr)
        console_handler.setFormatter(TrilndFormatter(use_colors=True))
        logger.addHandler(console_handler)

    if config.log_to_file:
        Path(config.log_file_path).parent.mkdir(parents=True, exist_ok=True)
        file_handler = logging.handlers.RotatingFileHandler(
            config.log_file_path,
            maxBytes=config.max_file_size,
            backupCount=config.backup_count,
            encoding='utf-8'
        )
        file_handler.setFormatter(TrilndFormatter(use_colors=False))
        logger.addHandler(file_handler)

    adapter = TrilndLoggerAdapter(logger, {})
    adapter.debug(f"Logging inizializzato: livello {config.level}, file {config.log_to_file}")
    return adapter


def get_logger(name: str = "trilnd") -> TrilndLoggerAdapter:
    """
    Ottiene un logger trilnd per un modulo specifico
    Args:
        name: Nome del modulo/componente
    Returns:
        TrilndLoggerAdapter: Logger configurato
    """
    return TrilndLoggerAdapter(logging.getLogger(name), {})

# pst_logger.py - Konfiguracja logowania (konsola stderr + opcjonalny plik rotujący)

import logging
import logging.handlers
import sys
from datetime import datetime
from pathlib import Path
from typing import Optional, Union

import colorlog

ROOT_LOGGER = "pst_network"
FILE_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
CONSOLE_FORMAT = "%(log_color)s%(levelname)-8s%(reset)s %(name)s: %(message)s"
DATE_FORMAT = "%Y-%m-%d %H:%M:%S"
MAX_BYTES = 10 * 1024 * 1024  # 10MB
BACKUP_COUNT = 7


def _level(log_level: Union[int, str]) -> int:
    if isinstance(log_level, int):
        return log_level
    level = logging.getLevelName(str(log_level).upper())
    if not isinstance(level, int):
        raise ValueError(f"Nieznany poziom logowania: {log_level}")
    return level


def setup_logger(name: str = ROOT_LOGGER, log_dir: Optional[Union[str, Path]] = None,
                 log_level: Union[int, str] = logging.WARNING, stream=None) -> logging.Logger:
    """
    Skonfiguruj logger

    Args:
        name: Nazwa loggera
        log_dir: Folder na logi (None = tylko konsola)
        log_level: Poziom logowania
        stream: Strumień konsoli (domyślnie stderr; stdout zostaje dla dokumentów)

    Returns:
        Logger instance
    """
    level = _level(log_level)
    logger = logging.getLogger(name)
    logger.setLevel(level)

    # Unikaj duplikacji handlerów
    if logger.handlers:
        for handler in logger.handlers:
            handler.setLevel(level)
        return logger

    console_handler = colorlog.StreamHandler(stream or sys.stderr)
    console_handler.setLevel(level)
    console_handler.setFormatter(colorlog.ColoredFormatter(
        CONSOLE_FORMAT,
        log_colors={
            "DEBUG": "cyan",
            "INFO": "green",
            "WARNING": "yellow",
            "ERROR": "red",
            "CRITICAL": "red,bg_white",
        },
    ))
    logger.addHandler(console_handler)

    if log_dir is not None:
        log_path = Path(log_dir)
        log_path.mkdir(exist_ok=True, parents=True)
        log_file = log_path / f"{name}_{datetime.now().strftime('%Y%m%d')}.log"
        file_handler = logging.handlers.RotatingFileHandler(
            log_file,
            maxBytes=MAX_BYTES,
            backupCount=BACKUP_COUNT,
            encoding="utf-8",
        )
        file_handler.setLevel(level)
        file_handler.setFormatter(logging.Formatter(FILE_FORMAT, datefmt=DATE_FORMAT))
        logger.addHandler(file_handler)

    logger.propagate = False
    return logger


def get_logger(name: str = ROOT_LOGGER) -> logging.Logger:
    """Pobierz istniejący logger lub utwórz nowy"""
    logger = logging.getLogger(name)
    if not logger.handlers and not name.startswith(ROOT_LOGGER + "."):
        return setup_logger(name)
    return logger


def reset_logger(name: str = ROOT_LOGGER):
    """Zdejmij handlery (między wywołaniami CLI w jednym procesie)"""
    logger = logging.getLogger(name)
    for handler in list(logger.handlers):
        handler.close()
        logger.removeHandler(handler)

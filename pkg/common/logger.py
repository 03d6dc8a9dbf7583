import logging
import sys
from typing import Optional, TextIO


def setup_logger(name: str, level: Optional[str] = None, stream: Optional[TextIO] = None) -> logging.Logger:
    """
    Configures a logger with a standard format for the entire application.
    Output: Timestamp [Level] [Module] Message

    The CLI writes answers to stdout, so it passes stream=sys.stderr to keep
    machine-readable output clean. Calling this again only updates the level.
    """
    logger = logging.getLogger() if name == 'root' else logging.getLogger(name)

    # Check if handlers already exist to avoid duplicate logs
    if not logger.handlers:
        handler = logging.StreamHandler(stream or sys.stdout)
        formatter = logging.Formatter('%(asctime)s [%(levelname)s] [%(name)s] %(message)s')
        handler.setFormatter(formatter)
        logger.addHandler(handler)

    logger.setLevel(_resolve_level(level))
    return logger


def _resolve_level(level: Optional[str]) -> int:
    if level is None:
        return logging.INFO
    resolved = logging.getLevelName(str(level).upper())
    # getLevelName returns a string for unknown names
    return resolved if isinstance(resolved, int) else logging.INFO

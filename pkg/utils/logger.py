"""
Logging configuration for qscatter

Library modules only call logging.getLogger(__name__); handlers are
attached once, by the command-line entry point.
"""

import functools
import logging
import os
import sys
import time
from logging.handlers import RotatingFileHandler
from typing import Optional

from dotenv import load_dotenv
from pythonjsonlogger import jsonlogger

load_dotenv()

MAX_LOG_BYTES = 5 * 1024 * 1024
LOG_BACKUPS = 3
JSON_FIELDS = '%(asctime)s %(name)s %(levelname)s %(message)s'
CONSOLE_FORMAT = 'qscatter %(levelname)s [%(name)s] %(message)s'


def setup_logger(name: str, log_file: Optional[str] = None, level: Optional[str] = None) -> logging.Logger:
    """
    Attach a rotating JSON file handler and a stderr handler to `name`

    Args:
        name: Logger name; "" configures the root logger
        log_file: JSON log path, LOG_FILE by default
        level: Level name, LOG_LEVEL by default

    Returns:
        The configured logger; calling again is a no-op
    """
    target = logging.getLogger(name)
    if any(getattr(h, '_qscatter', False) for h in target.handlers):
        return target

    level = (level or os.getenv('LOG_LEVEL', 'WARNING')).upper()
    target.setLevel(getattr(logging, level, logging.WARNING))

    log_file = log_file or os.getenv('LOG_FILE', 'logs/qscatter.log')
    if os.path.dirname(log_file):
        os.makedirs(os.path.dirname(log_file), exist_ok=True)

    json_handler = RotatingFileHandler(log_file, maxBytes=MAX_LOG_BYTES, backupCount=LOG_BACKUPS)
    json_handler.setFormatter(jsonlogger.JsonFormatter(JSON_FIELDS, datefmt='%Y-%m-%dT%H:%M:%S'))

    # stdout carries result tables
    stderr_handler = logging.StreamHandler(sys.stderr)
    stderr_handler.setFormatter(logging.Formatter(CONSOLE_FORMAT))

    for handler in (json_handler, stderr_handler):
        handler._qscatter = True
        target.addHandler(handler)
    return target


def log_performance(func):
    """Record wall time and outcome of a command or numeric driver"""
    log = logging.getLogger(func.__module__)

    @functools.wraps(func)
    def timed(*args, **kwargs):
        started = time.perf_counter()
        fields = {'function': func.__qualname__}
        try:
            value = func(*args, **kwargs)
        except Exception as e:
            fields.update(execution_time=time.perf_counter() - started, status='error', error=str(e))
            log.error("%s raised %s", func.__qualname__, type(e).__name__, extra=fields)
            raise
        fields.update(execution_time=time.perf_counter() - started, status='success')
        log.info("%s finished in %.3fs", func.__qualname__, fields['execution_time'], extra=fields)
        return value

    return timed

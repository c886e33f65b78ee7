import logging
import os
from logging.handlers import TimedRotatingFileHandler
from colorlog import ColoredFormatter
from dotenv import load_dotenv

load_dotenv()

BASE_LOG_DIR = os.getenv("BASE_LOG_DIR", "logs")
LOG_LEVEL = os.getenv("LOG_LEVEL", "INFO").upper()
LOG_TO_FILE = os.getenv("LOG_TO_FILE", "true").lower() in ("1", "true", "yes")

_initialized_loggers = set()

CONSOLE_FORMAT = "%(levelname)s - %(filename)s:%(lineno)d - %(message)s"
FILE_FORMAT = "%(asctime)s - %(levelname)s - [%(filename)s:%(lineno)d - %(funcName)s()] - %(message)s"
DATE_FORMAT = "%Y-%m-%d %H:%M:%S"


class DatedLogFileHandler(TimedRotatingFileHandler):
    """Midnight rotation that keeps the .log extension on rotated files"""

    def rotation_filename(self, default_name):
        """
        Turn 'logs/braess.log.2024-11-21' into 'logs/braess.2024-11-21.log'
        """
        dir_name, base_name = os.path.split(default_name)
        stem, _, rest = base_name.partition(".log.")
        if not rest:
            return default_name
        return os.path.join(dir_name, f"{stem}.{rest}.log")


def _console_handler(color: bool) -> logging.Handler:
    # stderr: stdout carries the CLI's JSON
    handler = logging.StreamHandler()
    if color:
        formatter = ColoredFormatter(
            "%(log_color)s" + CONSOLE_FORMAT,
            datefmt=DATE_FORMAT,
            log_colors={
                "DEBUG": "blue",
                "INFO": "green",
                "WARNING": "yellow",
                "ERROR": "red",
                "CRITICAL": "bold_red",
            },
        )
    else:
        formatter = logging.Formatter(CONSOLE_FORMAT, datefmt=DATE_FORMAT)
    handler.setFormatter(formatter)
    return handler


def _file_handler(log_file: str, backup_count: int) -> logging.Handler:
    log_dir = os.path.dirname(log_file)
    if log_dir:
        os.makedirs(log_dir, exist_ok=True)
    handler = DatedLogFileHandler(
        log_file,
        when="midnight",
        interval=1,
        backupCount=backup_count,
        encoding="utf-8",
        delay=True,
    )
    handler.setFormatter(logging.Formatter(FILE_FORMAT, datefmt=DATE_FORMAT))
    return handler


def setup_logger(
    logger_name="braess",
    log_file=None,
    log_level=None,
    color=True,
    to_file=None,
    backup_count=5,
):
    """
    Set up a logger with a console handler and an optional rotating file handler

    Args:
        logger_name: Name of the logger
        log_file: Path to log file (defaults to BASE_LOG_DIR/<logger_name>.log)
        log_level: Logging level; LOG_LEVEL from the environment when None
        color: Enable colored console output
        to_file: Attach the file handler; LOG_TO_FILE from the environment when None
        backup_count: Number of rotated files to keep

    Returns:
        logging.Logger: Configured logger instance
    """
    if logger_name in _initialized_loggers:
        return logging.getLogger(logger_name)

    logger = logging.getLogger(logger_name)
    logger.setLevel(log_level if log_level is not None else LOG_LEVEL)
    logger.propagate = False
    logger.handlers = []

    logger.addHandler(_console_handler(color))

    if to_file if to_file is not None else LOG_TO_FILE:
        # one file per top-level package, so braess.core.* and braess.analysis.* share braess.log
        log_file = log_file or os.path.join(BASE_LOG_DIR, f"{logger_name.split('.')[0]}.log")
        logger.addHandler(_file_handler(log_file, backup_count))

    _initialized_loggers.add(logger_name)
    return logger


def get_logger(name=None, **kwargs):
    """
    Get or create a logger instance
    Auto-detects the calling module's name if name is not provided
    """
    if name is None:
        import inspect

        frame = inspect.stack()[1]
        module = inspect.getmodule(frame[0])
        name = module.__name__ if module else "braess"

    return setup_logger(logger_name=name, **kwargs)

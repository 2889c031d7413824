"""
Logging setup for nsTrust.

Everything goes to stderr (and optionally a rotating file); stdout is reserved for
JSON reports.
"""
import logging
import os
import sys
from datetime import datetime
from logging.handlers import RotatingFileHandler
from typing import Any, Dict, List, Optional

# Unicode icons for logging
TICK_ICON = '✅'  # ✅
CROSS_ICON = '❌'  # ❌

LOGGING_DEFAULTS = {
    "level": "WARNING",
    "console_output": True,
    "file_output": False,
    "log_dir": "logs",
    "file_name_pattern": "nstr_%Y%m%d.log",
    "format": "%(asctime)s [%(levelname)s] %(name)s - %(message)s",
    "date_format": "%Y-%m-%d %H:%M:%S",
    "max_file_size_mb": 10,
    "max_files": 5,
}


def _handlers(options: Dict[str, Any]) -> List[logging.Handler]:
    handlers: List[logging.Handler] = []
    if options["console_output"]:
        handlers.append(logging.StreamHandler(sys.stderr))
    if options["file_output"]:
        os.makedirs(options["log_dir"], exist_ok=True)
        path = os.path.join(options["log_dir"], datetime.now().strftime(options["file_name_pattern"]))
        handlers.append(RotatingFileHandler(path, maxBytes=int(options["max_file_size_mb"] * 2 ** 20),
                                            backupCount=options["max_files"]))
    return handlers


def setup_logging_from_config(logging_config: Optional[Dict[str, Any]] = None) -> None:
    """
    Configure the root logger from the ``logging:`` section of main.yaml.

    Missing keys fall back to ``LOGGING_DEFAULTS``; existing root handlers are replaced.

    Args:
        logging_config: Logging section (level, console_output, file_output, log_dir,
            file_name_pattern, format, date_format, max_file_size_mb, max_files)
    """
    options = {**LOGGING_DEFAULTS, **{k: v for k, v in (logging_config or {}).items() if v is not None}}
    level = getattr(logging, str(options["level"]).upper(), logging.WARNING)
    formatter = logging.Formatter(options["format"], datefmt=options["date_format"])

    root = logging.getLogger()
    root.setLevel(level)
    for handler in list(root.handlers):
        root.removeHandler(handler)
    for handler in _handlers(options):
        handler.setFormatter(formatter)
        handler.setLevel(level)
        root.addHandler(handler)

    logging.debug(f"Logging at {logging.getLevelName(level)} "
                  f"(console={options['console_output']}, file={options['file_output']})")


def setup_logging(level: str = "WARNING") -> None:
    """Console-only logging at ``level``; used by ``--log-level``."""
    setup_logging_from_config({"level": level, "console_output": True, "file_output": False})


def get_logger(name: str) -> logging.Logger:
    return logging.getLogger(name)

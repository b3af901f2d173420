"""
logger.py
Logging utilities for the laboratory.
"""

import os
import sys
from datetime import datetime
from pathlib import Path
from typing import Any, Optional

from loguru import logger as _loguru_logger


class JSONSink:
    def __init__(self, log_dir: str, log_file_name: Optional[str] = None) -> None:
        """
        Initialize a JSONSink that writes serialized log records to <log_dir>/YYYY-MM-DD.jsonl.
        Optionally, a custom log_file_name can be provided (e.g., 'test-YYYY-MM-DD.jsonl').
        """
        self.log_dir = os.path.abspath(log_dir)
        Path(self.log_dir).mkdir(parents=True, exist_ok=True)
        if log_file_name is None:
            log_file_name = f"{datetime.now().date()}.jsonl"
        self.file_path = os.path.join(self.log_dir, log_file_name)
        self._file = open(self.file_path, "a", encoding="utf-8")

    def write(self, message: str) -> None:
        try:
            self._file.write(message)
            self._file.flush()
        except Exception:
            print(f"Failed to write log message: {message}", file=sys.stderr)

    def close(self) -> None:
        try:
            self._file.close()
        except Exception:
            pass

    def __del__(self) -> None:
        self.close()


# Singleton logger
_logger_instance: Any = None
_console_sink_id: Optional[int] = None
_json_sink: Optional[JSONSink] = None


def get_logger() -> Any:
    global _logger_instance, _console_sink_id
    if _logger_instance is not None:
        return _logger_instance

    _loguru_logger.remove()
    level = os.getenv("NCLP_LOG_LEVEL", "INFO")
    # Human-readable console sink; stderr keeps report output on stdout clean
    _console_sink_id = _loguru_logger.add(sys.stderr, level=level)
    _logger_instance = _loguru_logger

    log_dir = os.getenv("NCLP_LOG_DIR")
    if log_dir:
        add_json_sink(log_dir)
    return _logger_instance


def add_json_sink(log_dir: str) -> str:
    """Attach the structured JSON file sink; returns the file path."""
    global _json_sink
    log = get_logger()
    if _json_sink is not None:
        return _json_sink.file_path
    _json_sink = JSONSink(log_dir)
    log.add(_json_sink.write, serialize=True, level="DEBUG")
    return _json_sink.file_path


def set_console_level(level: str) -> None:
    """Replace the console sink with one at the given level."""
    global _console_sink_id
    log = get_logger()
    if _console_sink_id is not None:
        log.remove(_console_sink_id)
    _console_sink_id = log.add(sys.stderr, level=level)

"""
Utility functions and helper classes for file output and timing.
"""

import json
import os
import time
from typing import Any, Dict, Optional

import yaml

from configs.logging_config import PerformanceLogger, get_logger
from exceptions import ConfigurationError, OutputError

logger = get_logger(__name__)


def load_config(config_path: str) -> Dict[str, Any]:
    """
    Load a JSON or YAML document.

    Args:
        config_path: Path to configuration file

    Returns:
        Parsed document

    Raises:
        ConfigurationError: The file cannot be read, has an unsupported
            extension or holds malformed content
    """
    if not config_path.endswith((".json", ".yml", ".yaml")):
        raise ConfigurationError(f"Unsupported config file format: {config_path}")
    try:
        with open(config_path, "r", encoding="utf-8") as f:
            if config_path.endswith(".json"):
                data = json.load(f)
            else:
                data = yaml.safe_load(f)
    except OSError as e:
        raise ConfigurationError(f"Cannot read {config_path}: {e.strerror or e}") from e
    except (UnicodeDecodeError, json.JSONDecodeError, yaml.YAMLError) as e:
        raise ConfigurationError(f"Malformed {config_path}: {e}") from e
    if not isinstance(data, dict):
        raise ConfigurationError(f"{config_path} must contain an object at the top level")
    return data


def ensure_directory(directory_path: str) -> None:
    """
    Ensure directory exists, create if it doesn't.

    Args:
        directory_path: Path to directory
    """
    if directory_path:
        try:
            os.makedirs(directory_path, exist_ok=True)
        except OSError as e:
            raise OutputError(directory_path, str(e.strerror or e)) from e


class FileUtils:
    """UTF-8, LF-terminated file output; failures become OutputError with the path."""

    @staticmethod
    def write_text_file(file_path: str, content: str) -> None:
        """
        Write content to text file.

        Args:
            file_path: Path to file
            content: Content to write
        """
        ensure_directory(os.path.dirname(file_path))
        try:
            with open(file_path, "w", encoding="utf-8", newline="\n") as f:
                f.write(content)
        except OSError as e:
            logger.error("Write failed", path=file_path, error=str(e))
            raise OutputError(file_path, str(e.strerror or e)) from e

    @staticmethod
    def write_json_file(file_path: str, data: Dict[str, Any], indent: int = 2) -> None:
        """
        Write data to JSON file with sorted keys and a trailing newline.

        Args:
            file_path: Path to JSON file
            data: Data to write; non-finite floats must already be replaced
            indent: JSON indentation
        """
        text = json.dumps(data, indent=indent, sort_keys=True, allow_nan=False)
        FileUtils.write_text_file(file_path, text + "\n")


class PerformanceTimer:
    """Context manager for measuring execution time."""

    def __init__(self, name: str = "Operation", **context: Any):
        """
        Initialize timer.

        Args:
            name: Name of the operation being timed
            context: Extra fields bound to the log events
        """
        self.name = name
        self.start_time: Optional[float] = None
        self.end_time: Optional[float] = None
        self.context = context
        self.logger = logger.bind(operation=name, **context)
        self.performance = PerformanceLogger()

    def __enter__(self):
        """Start timing."""
        self.start_time = time.perf_counter()
        self.logger.debug("Operation started")
        return self

    def __exit__(self, exc_type, exc_val, exc_tb):
        """End timing and log duration."""
        self.end_time = time.perf_counter()
        self.performance.log_execution_time(self.name, self.get_duration(), **self.context)

    def get_duration(self) -> Optional[float]:
        """
        Get duration in seconds.

        Returns:
            Duration in seconds or None if not completed
        """
        if self.start_time is not None and self.end_time is not None:
            return self.end_time - self.start_time
        return None

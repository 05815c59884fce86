"""
Helper utilities for the Weil character engine
"""

import os
import json
import logging
from datetime import datetime
from typing import Dict, Any, Optional

from rich.console import Console
from rich.logging import RichHandler

logger = logging.getLogger(__name__)

_CONFIGURED = False


def setup_logging(log_level: str = "INFO", log_file: str = "") -> None:
    """
    Setup logging configuration for the application

    Args:
        log_level: Logging level (DEBUG, INFO, WARNING, ERROR)
        log_file: Optional path of an additional plain-text log file
    """
    global _CONFIGURED
    if _CONFIGURED:
        logging.getLogger().setLevel(getattr(logging, log_level.upper()))
        return

    handlers = [RichHandler(console=Console(stderr=True), show_path=False, rich_tracebacks=True)]
    if log_file:
        directory = os.path.dirname(log_file)
        if directory:
            os.makedirs(directory, exist_ok=True)
        file_handler = logging.FileHandler(log_file)
        file_handler.setFormatter(logging.Formatter('%(asctime)s - %(name)s - %(levelname)s - %(message)s'))
        handlers.append(file_handler)

    logging.basicConfig(
        level=getattr(logging, log_level.upper()),
        format='%(message)s',
        datefmt='[%X]',
        handlers=handlers,
        force=True,
    )
    _CONFIGURED = True


def _json_default(value: Any) -> Any:
    if hasattr(value, "tolist"):
        return value.tolist()
    if isinstance(value, complex):
        return [value.real, value.imag]
    raise TypeError(f"Object of type {type(value).__name__} is not JSON serializable")


def save_json(data: Any, filepath: str) -> bool:
    """
    Save data to a JSON file

    Args:
        data: Dictionary or list to save
        filepath: Path to save the file

    Returns:
        Success status
    """
    try:
        directory = os.path.dirname(filepath)
        if directory:
            os.makedirs(directory, exist_ok=True)
        with open(filepath, 'w', encoding='utf-8') as f:
            json.dump(data, f, indent=2, ensure_ascii=False, default=_json_default)
        return True
    except (OSError, TypeError) as e:
        logger.error(f"Failed to save JSON to {filepath}: {str(e)}")
        return False


def load_json(filepath: str) -> Optional[Any]:
    """
    Load data from a JSON file

    Args:
        filepath: Path to the JSON file

    Returns:
        Loaded data or None if failed
    """
    try:
        with open(filepath, 'r', encoding='utf-8') as f:
            return json.load(f)
    except (OSError, json.JSONDecodeError) as e:
        logger.error(f"Failed to load JSON from {filepath}: {str(e)}")
        return None


def create_timestamped_filename(prefix: str, extension: str = "json") -> str:
    """
    Create a timestamped filename

    Args:
        prefix: Filename prefix
        extension: File extension

    Returns:
        Timestamped filename
    """
    timestamp = datetime.now().strftime("%Y%m%d_%H%M%S")
    return f"{prefix}_{timestamp}.{extension}"


class PerformanceMonitor:
    """
    Wall-clock checkpoints for workflow stages
    """

    def __init__(self):
        self.start_time = None
        self.checkpoints = {}

    def start(self):
        """Start monitoring"""
        self.start_time = datetime.now()
        self.checkpoints = {}

    def checkpoint(self, name: str):
        """Add a checkpoint"""
        if self.start_time:
            elapsed = (datetime.now() - self.start_time).total_seconds()
            self.checkpoints[name] = elapsed

    def get_summary(self) -> Dict[str, Any]:
        """Get performance summary"""
        if not self.start_time:
            return {}

        total_time = (datetime.now() - self.start_time).total_seconds()
        return {
            "total_time": total_time,
            "checkpoints": self.checkpoints.copy()
        }

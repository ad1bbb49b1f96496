"""Utility functions and helpers for the application."""

from pathlib import Path
from typing import Any, Optional
import hashlib
import logging
import math
import json

logger = logging.getLogger(__name__)


def ensure_directory(path: Path) -> None:
    """Ensure a directory exists, creating it if necessary."""
    path.mkdir(parents=True, exist_ok=True)


def load_json(file_path: Path) -> Optional[dict[str, Any]]:
    """Load a JSON object from a file.

    Args:
        file_path: Path to the JSON file

    Returns:
        Parsed JSON object or None if loading fails
    """
    try:
        with open(file_path, 'r', encoding='utf-8') as f:
            data = json.load(f)
    except (FileNotFoundError, json.JSONDecodeError) as e:
        logger.error(f"Failed to load JSON from {file_path}: {e}")
        return None

    if not isinstance(data, dict):
        logger.error(f"Expected a JSON object in {file_path}, got {type(data).__name__}")
        return None
    return data


def save_json(data: dict[str, Any], file_path: Path) -> bool:
    """Save a report as JSON, writing undefined floats as null.

    Args:
        data: Data to save
        file_path: Path where to save the JSON file

    Returns:
        True if successful, False otherwise
    """
    try:
        ensure_directory(file_path.parent)
        with open(file_path, 'w', encoding='utf-8') as f:
            f.write(to_json(data))
            f.write("\n")
        return True
    except (OSError, TypeError, ValueError) as e:
        logger.error(f"Failed to save JSON to {file_path}: {e}")
        return False


def to_json(data: Any) -> str:
    """Serialize data to JSON text with NaN mapped to null."""
    return json.dumps(_nan_to_none(data), ensure_ascii=False, indent=2)


def _nan_to_none(value: Any) -> Any:
    if isinstance(value, float) and math.isnan(value):
        return None
    if isinstance(value, dict):
        return {key: _nan_to_none(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [_nan_to_none(item) for item in value]
    return value


def stable_seed(*parts: Any) -> int:
    """Derive a 64-bit seed from the given parts.

    The result depends only on the string form of the parts, never on
    process state, so it is identical across runs and worker processes.

    Args:
        parts: Values identifying the unit of work

    Returns:
        Unsigned 64-bit integer seed
    """
    key = "\x1f".join(_seed_token(part) for part in parts)
    digest = hashlib.blake2b(key.encode("utf-8"), digest_size=8).digest()
    return int.from_bytes(digest, "big")


def _seed_token(part: Any) -> str:
    if isinstance(part, float):
        return repr(round(part, 9))
    return str(part)


def format_time_seconds(seconds: float) -> str:
    """Format seconds into a human-readable string.

    Args:
        seconds: Time in seconds

    Returns:
        Formatted time string (e.g., "1h 23m 45s", "45.2s")
    """
    if seconds < 60:
        return f"{seconds:.1f}s"

    minutes = int(seconds // 60)
    remaining_seconds = int(seconds % 60)

    if minutes < 60:
        return f"{minutes}m {remaining_seconds}s"

    hours = minutes // 60
    remaining_minutes = minutes % 60
    return f"{hours}h {remaining_minutes}m {remaining_seconds}s"

from enum import Enum
from dataclasses import asdict, is_dataclass
from fractions import Fraction
from pathlib import Path
import os
import sys
import json
import logging
import logging.handlers
from typing import Any, Optional

package_dir = Path(__file__).parent


def _get_user_data_dir():
    if home := os.environ.get("PADIC_EULER_HOME"):
        dir = Path(home)
        dir.mkdir(parents=True, exist_ok=True)
        return dir
    try:
        dir = Path.home() / ".padic_euler"
        dir.mkdir(exist_ok=True)
        return dir
    except Exception:
        dir = package_dir.parent / ".appdata"
        dir.mkdir(exist_ok=True)
        return dir


user_data_dir = _get_user_data_dir()


def _get_log_dir():
    dir = user_data_dir / "logs"
    try:
        dir.mkdir(exist_ok=True)
        return dir
    except Exception:
        print(f"Failed to create log directory {dir}", file=sys.stderr)
        return None


def create_logger(name: str, path: Optional[Path]):
    logger = logging.getLogger(name)
    logger.setLevel(logging.DEBUG)
    if path is None or os.environ.get("PADIC_EULER_LOG") == "stderr":
        handler = logging.StreamHandler(sys.stderr)
    else:
        handler = logging.handlers.RotatingFileHandler(
            path, encoding="utf-8", maxBytes=10 * 1024 * 1024, backupCount=4
        )
    handler.setFormatter(logging.Formatter("%(asctime)s %(levelname)s %(message)s"))
    logger.addHandler(handler)
    return logger


log_dir = _get_log_dir()
logger = create_logger("padic_euler", log_dir / "padic_euler.log" if log_dir else None)


def log_error(error: Exception):
    message = str(error)
    if isinstance(error, AssertionError):
        message = f"Error: Internal assertion failed [{error}]"
    elif not message.startswith("Error:"):
        message = f"Error: {message}"
    logger.exception(message)
    return message


def format_rational(q: Fraction):
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def encode_json(obj: Any):
    if isinstance(obj, Enum):
        return obj.name
    if isinstance(obj, Path):
        return str(obj.as_posix())
    if isinstance(obj, Fraction):
        return format_rational(obj)
    if hasattr(obj, "to_json"):
        return obj.to_json()
    if is_dataclass(obj):
        assert not isinstance(obj, type)
        return asdict(obj)
    raise TypeError(f"Object of type {obj.__class__.__name__} is not JSON serializable")


def dump_json(obj: Any, indent: Optional[int] = None):
    """Canonical JSON: sorted keys, fixed separators. Identical input gives identical bytes."""
    separators = (",", ": ") if indent else (",", ":")
    return json.dumps(
        obj, default=encode_json, sort_keys=True, indent=indent, separators=separators
    )


def read_json_with_comments(path: Path):
    lines = path.read_text().splitlines()
    return json.loads("\n".join("" if line.strip().startswith("//") else line for line in lines))

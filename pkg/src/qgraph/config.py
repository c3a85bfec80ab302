"""Runtime settings for qgraph.

Values come from built-in defaults, then ``~/.qgraph_config.json`` (or the file named
by ``QGRAPH_CONFIG``), then ``QGRAPH_*`` environment variables. CLI options override
all of them.
"""

import json
import logging
import os
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Any, Dict, Optional

from qgraph.exceptions import ValidationError

logger = logging.getLogger(__name__)

DEFAULT_CONFIG_PATH = "~/.qgraph_config.json"


@dataclass(frozen=True)
class Settings:
    """Resolved settings shared by the CLI and campaign drivers."""

    threads: int = 1
    time_budget_secs: Optional[float] = None
    cache_dir: Optional[Path] = None
    g10_witness: Optional[Path] = None

    def with_overrides(self, **overrides: Any) -> "Settings":
        """Return a copy with every non-None override applied."""
        values = {key: value for key, value in overrides.items() if value is not None}
        return replace(self, **values)


def _load_config_file(config_path: Optional[str]) -> Dict[str, Any]:
    """Load the JSON config file; a missing file yields an empty dict."""
    path = Path(os.path.expanduser(config_path or os.environ.get("QGRAPH_CONFIG", DEFAULT_CONFIG_PATH)))
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = json.load(f)
    except FileNotFoundError:
        return {}
    except json.JSONDecodeError as e:
        raise ValidationError(f"Invalid JSON in config file {path}: {e}", "config", str(path))

    if not isinstance(data, dict):
        raise ValidationError(f"Config file {path} must hold a JSON object", "config", str(path))
    logger.debug("Loaded config from %s", path)
    return data


def _parse_threads(value: Any) -> int:
    try:
        threads = int(value)
    except (TypeError, ValueError):
        raise ValidationError(f"threads must be an integer, got {value!r}", "config", value)
    if threads < 1:
        raise ValidationError(f"threads must be positive, got {threads}", "config", value)
    return threads


def _parse_budget(value: Any) -> Optional[float]:
    if value in (None, ""):
        return None
    try:
        budget = float(value)
    except (TypeError, ValueError):
        raise ValidationError(f"time budget must be a number of seconds, got {value!r}", "config", value)
    if budget <= 0:
        raise ValidationError(f"time budget must be positive, got {budget}", "config", value)
    return budget


def _optional_path(value: Any) -> Optional[Path]:
    if not value:
        return None
    return Path(os.path.expanduser(str(value)))


def load_settings(config_path: Optional[str] = None) -> Settings:
    """Resolve settings from the config file and environment.

    Args:
        config_path: Explicit config file. Defaults to ``~/.qgraph_config.json``

    Returns:
        Settings instance

    Raises:
        ValidationError: If the config file or an environment value is malformed
    """
    data = _load_config_file(config_path)

    threads = data.get("threads", os.cpu_count() or 1)
    budget = data.get("time_budget_secs")
    cache_dir = data.get("cache_dir")
    g10_witness = data.get("g10_witness")

    env = os.environ
    if env.get("QGRAPH_THREADS"):
        threads = env["QGRAPH_THREADS"]
    if env.get("QGRAPH_TIME_BUDGET_SECS"):
        budget = env["QGRAPH_TIME_BUDGET_SECS"]
    if env.get("QGRAPH_CACHE_DIR"):
        cache_dir = env["QGRAPH_CACHE_DIR"]
    if env.get("QGRAPH_G10_WITNESS"):
        g10_witness = env["QGRAPH_G10_WITNESS"]

    return Settings(
        threads=_parse_threads(threads),
        time_budget_secs=_parse_budget(budget),
        cache_dir=_optional_path(cache_dir),
        g10_witness=_optional_path(g10_witness),
    )


_settings: Optional[Settings] = None


def get_settings() -> Settings:
    """Process-wide settings, loaded on first use."""
    global _settings
    if _settings is None:
        _settings = load_settings()
    return _settings


def set_settings(settings: Optional[Settings]) -> None:
    """Install (or with None, reset) the process-wide settings."""
    global _settings
    _settings = settings

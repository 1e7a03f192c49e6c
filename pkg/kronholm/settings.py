# File: settings.py
import json
import os
import sys
from pathlib import Path
from typing import Any, Dict, Optional

from .errors import ConfigError
from .log import get_logger

logger = get_logger(__name__)

APP_VERSION = "1.0.0"


class AppConfig:
    """Application configuration constants"""
    APP_NAME = "kronholm"
    APP_VERSION = APP_VERSION

    # Biên mở rộng quanh bounding box khi kiểm tra oracle
    DEFAULT_MARGIN = 4
    MARGIN_ENV = "KRONHOLM_MARGIN"

    # Chart geometry: one bidegree = one unit
    SVG_UNIT = 24
    PNG_UNIT = 32
    CHART_EXTENT = 3  # cone edges drawn this many units past the window

    # Color scheme
    COLORS = {
        'success': '#4CAF50',    # Xanh lá - thành công
        'warning': '#FF9800',    # Vàng cam - cảnh báo
        'error': '#F44336',      # Đỏ - lỗi
        'info': '#2196F3',       # Xanh dương - thông tin
        'primary': '#9C27B0',    # Tím - chính
        'axis': '#9e9e9e',
        'top_cone': '#1565c0',
        'bottom_cone': '#c62828',
    }

    # ANSI colours for the console log, same level names as COLORS
    LOG_COLORS = {
        'DEBUG': '\033[90m',
        'INFO': '\033[92m',
        'WARNING': '\033[33m',
        'ERROR': '\033[91m',
        'CRITICAL': '\033[91m',
    }
    LOG_RESET = '\033[0m'

    SETTINGS_KEYS = ('margin', 'svg_unit')


def resource_path(rel: str) -> str:
    if hasattr(sys, "_MEIPASS"):         # PyInstaller
        base = Path(sys._MEIPASS)
    else:
        base = Path(__file__).resolve().parent.parent
    return str(base / rel)


def _parse_margin(raw: Any, source: str) -> int:
    try:
        value = int(str(raw).strip())
    except (TypeError, ValueError):
        raise ConfigError(f"{source}: margin must be an integer, got {raw!r}")
    if value < 0:
        raise ConfigError(f"{source}: margin must be nonnegative, got {value}")
    return value


def resolve_margin(cli_value: Optional[int] = None,
                   settings: Optional[Dict[str, Any]] = None) -> int:
    """CLI flag, then KRONHOLM_MARGIN, then the settings file, then the default."""
    if cli_value is not None:
        return _parse_margin(cli_value, "--margin")
    env = os.environ.get(AppConfig.MARGIN_ENV)
    if env is not None and env.strip() != "":
        return _parse_margin(env, AppConfig.MARGIN_ENV)
    if settings and "margin" in settings:
        return _parse_margin(settings["margin"], "settings")
    return AppConfig.DEFAULT_MARGIN


def load_settings(path: Optional[str]) -> Dict[str, Any]:
    """Read the optional JSON settings file; a missing path gives {}."""
    if not path:
        return {}
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = json.load(f)
    except FileNotFoundError:
        raise ConfigError(f"settings file not found: {path}")
    except json.JSONDecodeError as e:
        raise ConfigError(f"settings file {path} is not valid JSON: {e}")
    if not isinstance(data, dict):
        raise ConfigError(f"settings file {path} must hold a JSON object")
    result = {}
    for key, value in data.items():
        if key in AppConfig.SETTINGS_KEYS:
            result[key] = value
        else:
            logger.warning("ignoring unknown setting '%s'", key)
    return result


def svg_unit(settings: Optional[Dict[str, Any]] = None) -> int:
    if settings and "svg_unit" in settings:
        try:
            unit = int(settings["svg_unit"])
        except (TypeError, ValueError):
            raise ConfigError(f"svg_unit must be an integer, got {settings['svg_unit']!r}")
        if unit <= 0:
            raise ConfigError("svg_unit must be positive")
        return unit
    return AppConfig.SVG_UNIT

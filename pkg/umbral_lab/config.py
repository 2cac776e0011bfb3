from __future__ import annotations

import os
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from .errors import ConfigError


DEFAULT_BUDGET = 1_000_000
DEFAULT_PRECISION = 32
_LOG_LEVELS = frozenset({"DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"})


@dataclass(frozen=True)
class Settings:
    budget: int
    precision: int
    workers: int
    log_level: str
    log_file: Optional[Path]


def _env(name: str, default: str) -> str:
    v = os.getenv(name)
    return v if v is not None and v != "" else default


def _env_int(name: str, default: int) -> int:
    raw = _env(name, str(default))
    try:
        value = int(raw)
    except ValueError:
        raise ConfigError(f"{name} must be an integer, got {raw!r}")
    if value < 1:
        raise ConfigError(f"{name} must be >= 1, got {value}")
    return value


def get_settings() -> Settings:
    budget = _env_int("UMBRAL_LAB_BUDGET", DEFAULT_BUDGET)
    precision = _env_int("UMBRAL_LAB_PRECISION", DEFAULT_PRECISION)
    workers = _env_int("UMBRAL_LAB_WORKERS", 1)
    log_level = _env("UMBRAL_LAB_LOG_LEVEL", "WARNING").upper()
    if log_level not in _LOG_LEVELS:
        raise ConfigError(f"UMBRAL_LAB_LOG_LEVEL must be one of {sorted(_LOG_LEVELS)}, got {log_level!r}")
    log_file = os.getenv("UMBRAL_LAB_LOG_FILE")
    return Settings(
        budget=budget,
        precision=precision,
        workers=workers,
        log_level=log_level,
        log_file=Path(log_file).resolve() if log_file else None,
    )

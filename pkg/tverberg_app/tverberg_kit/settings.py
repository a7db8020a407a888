"""Environment-driven settings.

The CLI loads ``.env`` from the repository root before calling
``load_settings``; library code only ever receives a ``Settings`` value.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping, Optional

from tverberg_kit.core.errors import ConfigError

TRUTHY = {"1", "true", "yes", "on"}

DEFAULT_RETRIES = 8
DEFAULT_JOBS = 1
DEFAULT_GEN_ATTEMPTS = 1000
LOG_LEVELS = {"DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"}


@dataclass(frozen=True)
class Settings:
    retries: int = DEFAULT_RETRIES
    jobs: int = DEFAULT_JOBS
    gen_attempts: int = DEFAULT_GEN_ATTEMPTS
    save_traces: bool = False
    trace_dir: Path = Path("./traces")
    log_level: str = "WARNING"


def _int(env: Mapping[str, str], name: str, default: int, minimum: int) -> int:
    raw = env.get(name)
    if raw is None or not str(raw).strip():
        return default
    try:
        value = int(str(raw).strip())
    except ValueError:
        raise ConfigError(name, raw) from None
    if value < minimum:
        raise ConfigError(name, raw)
    return value


def load_settings(env: Optional[Mapping[str, str]] = None) -> Settings:
    env = os.environ if env is None else env
    level = str(env.get("TVK_LOG_LEVEL", "WARNING")).strip().upper()
    if level not in LOG_LEVELS:
        raise ConfigError("TVK_LOG_LEVEL", level)
    return Settings(
        retries=_int(env, "TVK_RETRIES", DEFAULT_RETRIES, 0),
        jobs=_int(env, "TVK_JOBS", DEFAULT_JOBS, 1),
        gen_attempts=_int(env, "TVK_GEN_ATTEMPTS", DEFAULT_GEN_ATTEMPTS, 1),
        save_traces=str(env.get("TVK_SAVE_TRACES", "0")).strip().lower() in TRUTHY,
        trace_dir=Path(env.get("TVK_TRACE_DIR", "./traces")),
        log_level=level,
    )

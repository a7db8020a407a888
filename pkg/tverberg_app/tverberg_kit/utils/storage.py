import json
import logging
from datetime import datetime, timezone
from pathlib import Path
from typing import Optional

from tverberg_kit.settings import Settings

logger = logging.getLogger(__name__)


def save_trace(data: dict, settings: Settings, run_id: Optional[str] = None) -> Optional[Path]:
    """Persist a trace document if TVK_SAVE_TRACES is enabled; otherwise no-op."""
    if not settings.save_traces:
        return None
    settings.trace_dir.mkdir(parents=True, exist_ok=True)
    path = settings.trace_dir / f"{run_id or new_run_id()}.json"
    with open(path, "w", encoding="utf-8") as f:
        json.dump(data, f, indent=2, ensure_ascii=False)
    logger.info("trace saved to %s", path)
    return path


def new_run_id() -> str:
    # use timezone-aware datetime
    return datetime.now(timezone.utc).strftime("trace-%Y%m%dT%H%M%S%fZ")

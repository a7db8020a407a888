"""Seeded batch runs of the finders and the reduction, tabulated with pandas."""
from __future__ import annotations

import logging
import time
from pathlib import Path
from typing import Callable, Dict, List

import pandas as pd

from tverberg_kit.core.errors import TverbergKitError
from tverberg_kit.core.rational import PointConfig
from tverberg_kit.finders.tverberg import find_tverberg3, verify_witness
from tverberg_kit.finders.vkf import find_vkf3, verify_vkf
from tverberg_kit.reduction.pipeline import run_reduction
from tverberg_kit.settings import Settings
from tverberg_kit.utils.generate import generate_instance

logger = logging.getLogger(__name__)

DENOM_BOUND = 100


def _tverberg(config: PointConfig, k: int, settings: Settings) -> Dict[str, object]:
    w = find_tverberg3(config, jobs=settings.jobs)
    return {"ok": verify_witness(config, w), "parts": str(w.parts)}


def _vkf(config: PointConfig, k: int, settings: Settings) -> Dict[str, object]:
    w = find_vkf3(config, k, jobs=settings.jobs)
    return {"ok": verify_vkf(config, w), "parts": str(w.parts)}


def _reduce(config: PointConfig, k: int, settings: Settings) -> Dict[str, object]:
    trace = run_reduction(config, k, retries=settings.retries, jobs=settings.jobs)
    return {"ok": verify_witness(config, trace.final), "parts": str(trace.final.parts),
            "case": trace.case_tag, "retries": trace.retries}


# kind -> runner; instance_shape gives the point count and dimension
KINDS: Dict[str, Callable] = {
    "tverberg": _tverberg,
    "vkf": _vkf,
    "reduce": _reduce,
}


def instance_shape(kind: str, k: int) -> tuple:
    if kind == "tverberg":
        return 6 * k + 1, 3 * k - 1
    if kind == "vkf":
        return 6 * k + 5, 3 * k
    if kind == "reduce":
        return 6 * k + 1, 3 * k - 1
    raise KeyError(kind)


def run_survey(kind: str, count: int, seed: int, settings: Settings, k: int = 1) -> pd.DataFrame:
    """One row per seed: outcome, wall time and run details."""
    runner = KINDS[kind]
    n, dim = instance_shape(kind, k)
    rows: List[Dict[str, object]] = []
    for s in range(seed, seed + count):
        config = generate_instance(s, n, dim, DENOM_BOUND, attempts=settings.gen_attempts)
        start = time.perf_counter()
        try:
            row = runner(config, k, settings)
            row["error"] = ""
        except TverbergKitError as exc:
            row = {"ok": False, "error": f"{type(exc).__name__}: {exc}"}
        row.update(seed=s, seconds=time.perf_counter() - start)
        rows.append(row)
        logger.info("survey %s seed %d: ok=%s in %.2fs", kind, s, row["ok"], row["seconds"])
    df = pd.DataFrame(rows)
    front = ["seed", "ok", "seconds"]
    return df[front + [c for c in df.columns if c not in front]]


def summarize(df: pd.DataFrame) -> pd.DataFrame:
    summary = {
        "runs": len(df),
        "successes": int(df["ok"].sum()),
        "median_seconds": float(df["seconds"].median()),
        "max_seconds": float(df["seconds"].max()),
    }
    if "retries" in df.columns:
        summary["max_retries"] = int(pd.to_numeric(df["retries"], errors="coerce").fillna(0).max())
    return pd.DataFrame([summary])


def save_table(df: pd.DataFrame, path: Path) -> Path:
    """CSV, or parquet (pyarrow) when the suffix says so."""
    path = Path(path)
    if path.suffix.lower() == ".parquet":
        df.to_parquet(path, engine="pyarrow", index=False)
    else:
        df.to_csv(path, index=False)
    return path

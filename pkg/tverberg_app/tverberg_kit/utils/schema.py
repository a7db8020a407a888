from __future__ import annotations

import re
from typing import Iterable, List, Optional

import pandas as pd
from rapidfuzz import fuzz, process

LABEL_CANDIDATES = ("label", "name", "id", "point")
COORDINATE_PATTERN = re.compile(r"^(?:x|coord|c)(\d+)$")


def _norm_key(name: str) -> str:
    """Normalize a column or candidate name for case/format-insensitive matching."""
    return re.sub(r"[^a-z0-9]", "", str(name).lower())


def find_column(df: pd.DataFrame, candidates: Iterable[str]) -> Optional[str]:
    """
    Return the first DataFrame column matching any candidate (case/format-insensitive),
    with fallbacks:
      1) exact normalized match
      2) fuzzy match via RapidFuzz (score_cutoff 85)
    """
    if df is None or len(df.columns) == 0:
        return None

    cols = [str(c) for c in df.columns]
    norm_map = {_norm_key(c): c for c in cols}
    candidates = list(candidates)

    for cand in candidates:
        key = _norm_key(cand)
        if key in norm_map:
            return norm_map[key]

    choices = {c: _norm_key(c) for c in cols}
    for cand in candidates:
        query = _norm_key(cand)
        if not query:
            continue
        match = process.extractOne(query, choices, scorer=fuzz.ratio, score_cutoff=85)
        if match:
            # (normalized value, score, original column) for mapping choices
            return match[2]
    return None


def coordinate_columns(df: pd.DataFrame, label_column: Optional[str]) -> List[str]:
    """Columns named x0, x_1, coord2 ... in index order, else every non-label column."""
    numbered = []
    for col in df.columns:
        m = COORDINATE_PATTERN.match(_norm_key(col))
        if m:
            numbered.append((int(m.group(1)), str(col)))
    if numbered:
        return [col for _, col in sorted(numbered)]
    return [str(c) for c in df.columns if str(c) != label_column]

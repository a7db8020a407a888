"""Point-set and witness documents.

Documents are JSON with every rational written as a string ("-3/7", "2").
Point sets may also arrive as CSV (header row, one point per line).
"""
from __future__ import annotations

import io
import json
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, Optional, Sequence, Tuple

import pandas as pd

from tverberg_kit.core.convexity import IntersectionCertificate
from tverberg_kit.core.errors import InputError, ParseError
from tverberg_kit.core.rational import PointConfig, RatVector, as_rat
from tverberg_kit.finders.tverberg import TverbergWitness, verify_witness
from tverberg_kit.finders.vkf import VkfWitness, verify_vkf
from tverberg_kit.reduction.descent import conclusions_hold
from tverberg_kit.reduction.pipeline import ReductionTrace
from tverberg_kit.utils.schema import LABEL_CANDIDATES, coordinate_columns, find_column

logger = logging.getLogger(__name__)

KINDS = ("tverberg", "vkf", "reduction-trace")


def _rat(value: Any, line: Optional[int], where: str) -> Fraction:
    if not isinstance(value, (str, int)) or isinstance(value, bool):
        raise ParseError(f"expected a rational string, got {value!r}", line, where)
    try:
        return as_rat(value)
    except InputError as exc:
        raise ParseError(str(exc), line, where) from None


def _rats(values: Any, where: str) -> RatVector:
    if not isinstance(values, list):
        raise ParseError("expected an array of rationals", None, where)
    return tuple(_rat(v, None, f"{where}[{i}]") for i, v in enumerate(values))


def _load_json(text: str) -> Dict[str, Any]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, None) from None
    if not isinstance(doc, dict):
        raise ParseError("document must be a JSON object")
    return doc


# ---------------------------------------------------------------------------
# point sets
# ---------------------------------------------------------------------------

def pointset_to_dict(config: PointConfig) -> Dict[str, Any]:
    return {
        "dim": config.dim,
        "points": [[str(x) for x in p] for p in config.points],
        "labels": list(config.labels),
    }


def serialize_pointset(config: PointConfig) -> str:
    return json.dumps(pointset_to_dict(config), indent=2)


def pointset_from_dict(doc: Dict[str, Any], where: str = "") -> PointConfig:
    dim = doc.get("dim")
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        raise ParseError(f"dim must be a positive integer, got {dim!r}", None, f"{where}dim")
    points = doc.get("points")
    if not isinstance(points, list):
        raise ParseError("points must be an array", None, f"{where}points")
    rows = []
    for i, row in enumerate(points):
        coords = _rats(row, f"{where}points[{i}]")
        if len(coords) != dim:
            raise ParseError(f"point has {len(coords)} coordinates, expected {dim}", None, f"{where}points[{i}]")
        rows.append(coords)
    labels = doc.get("labels") or ()
    if not isinstance(labels, (list, tuple)) or any(not isinstance(s, str) for s in labels):
        raise ParseError("labels must be an array of strings", None, f"{where}labels")
    if labels and len(labels) != len(rows):
        raise ParseError("labels and points differ in length", None, f"{where}labels")
    seen = set()
    for i, label in enumerate(labels):
        if label in seen:
            raise ParseError(f"duplicate label {label!r}", None, f"{where}labels[{i}]")
        seen.add(label)
    return PointConfig(dim, tuple(rows), tuple(labels))


def _parse_csv(text: str) -> PointConfig:
    df = pd.read_csv(io.StringIO(text), dtype=str, keep_default_na=False, skipinitialspace=True)
    if df.empty:
        raise ParseError("CSV holds no points", 1, None)
    label_col = find_column(df, LABEL_CANDIDATES)
    coord_cols = coordinate_columns(df, label_col)
    if not coord_cols:
        raise ParseError("CSV has no coordinate columns", 1, None)
    rows, labels, seen = [], [], {}
    for pos, record in enumerate(df.itertuples(index=False)):
        line = pos + 2
        values = dict(zip([str(c) for c in df.columns], record))
        coords = []
        for col in coord_cols:
            cell = str(values[col]).strip()
            if not cell:
                raise ParseError("missing coordinate", line, col)
            coords.append(_rat(cell, line, col))
        rows.append(tuple(coords))
        if label_col is not None:
            label = str(values[label_col]).strip()
            if label in seen:
                raise ParseError(f"duplicate label {label!r} (first on line {seen[label]})", line, label_col)
            seen[label] = line
            labels.append(label)
    logger.debug("CSV point set: %d points, coordinates %s, labels %s", len(rows), coord_cols, label_col)
    return PointConfig(len(coord_cols), tuple(rows), tuple(labels))


def parse_pointset(text: str) -> PointConfig:
    """Parse a JSON point-set document, or CSV when the text is not a JSON object."""
    if text.lstrip().startswith("{"):
        return pointset_from_dict(_load_json(text))
    return _parse_csv(text)


# ---------------------------------------------------------------------------
# witnesses
# ---------------------------------------------------------------------------

def _cert_to_dict(parts: Sequence[Sequence[int]], cert: IntersectionCertificate) -> Dict[str, Any]:
    return {
        "parts": [list(p) for p in parts],
        "common_point": [str(x) for x in cert.common_point],
        "coefficients": [[[i, str(w)] for i, w in c] for c in cert.coefficients],
    }


def _cert_from_dict(doc: Dict[str, Any], where: str = "") -> Tuple[Tuple[Tuple[int, ...], ...], IntersectionCertificate]:
    parts = doc.get("parts")
    if not isinstance(parts, list) or len(parts) != 3:
        raise ParseError("parts must be an array of three index arrays", None, f"{where}parts")
    out_parts = []
    for i, p in enumerate(parts):
        if not isinstance(p, list) or any(not isinstance(x, int) or isinstance(x, bool) for x in p):
            raise ParseError("part must be an array of integers", None, f"{where}parts[{i}]")
        out_parts.append(tuple(p))
    point = _rats(doc.get("common_point"), f"{where}common_point")
    coeffs = doc.get("coefficients")
    if not isinstance(coeffs, list) or len(coeffs) != 3:
        raise ParseError("coefficients must hold three arrays", None, f"{where}coefficients")
    cert_coeffs = []
    for i, c in enumerate(coeffs):
        pairs = []
        for j, pair in enumerate(c if isinstance(c, list) else [None]):
            at = f"{where}coefficients[{i}][{j}]"
            if not isinstance(pair, list) or len(pair) != 2 or not isinstance(pair[0], int):
                raise ParseError("coefficient must be [index, rational]", None, at)
            pairs.append((pair[0], _rat(pair[1], None, at)))
        cert_coeffs.append(tuple(pairs))
    return tuple(out_parts), IntersectionCertificate(point, tuple(cert_coeffs))


@dataclass(frozen=True)
class WitnessDocument:
    kind: str
    parts: Tuple[Tuple[int, ...], ...]
    cert: IntersectionCertificate
    k: Optional[int] = None
    trace: Optional[Dict[str, Any]] = field(default=None)


def tverberg_document(w: TverbergWitness) -> Dict[str, Any]:
    return {"kind": "tverberg", **_cert_to_dict(w.parts, w.cert)}


def vkf_document(w: VkfWitness) -> Dict[str, Any]:
    return {"kind": "vkf", "k": w.k, **_cert_to_dict(w.parts, w.cert)}


def trace_document(trace: ReductionTrace) -> Dict[str, Any]:
    """Reduction-trace document: the final partition plus the lifted run."""
    inst = trace.instance
    descent = trace.descent
    return {
        "kind": "reduction-trace",
        "k": inst.k,
        **_cert_to_dict(trace.final.parts, trace.final.cert),
        "trace": {
            "order": list(trace.order),
            "epsilon": str(inst.epsilon),
            "delta": str(inst.delta),
            "mast_heights": [str(h) for h in inst.mast_heights],
            "case": trace.case_tag,
            "retries": trace.retries,
            "highest_vertices": list(trace.highest_vertices) if trace.highest_vertices else None,
            "projected_parts": [list(p) for p in trace.projected_parts],
            "lifted": pointset_to_dict(inst.lifted),
            "vkf": _cert_to_dict(trace.vkf_witness.parts, trace.vkf_witness.cert),
            "descent": {
                **_cert_to_dict(descent.parts, descent.cert),
                "unused_special": list(descent.unused_special),
            },
            "attempts": [dict(a) for a in trace.attempts],
        },
    }


def dump_document(doc: Dict[str, Any]) -> str:
    return json.dumps(doc, indent=2)


def parse_witness(text: str) -> WitnessDocument:
    doc = _load_json(text)
    kind = doc.get("kind")
    if kind not in KINDS:
        raise ParseError(f"unknown witness kind {kind!r}", None, "kind")
    parts, cert = _cert_from_dict(doc)
    k = doc.get("k")
    if kind != "tverberg" and (not isinstance(k, int) or isinstance(k, bool) or k < 1):
        raise ParseError("k must be a positive integer", None, "k")
    trace = doc.get("trace") if kind == "reduction-trace" else None
    if kind == "reduction-trace" and not isinstance(trace, dict):
        raise ParseError("reduction-trace document needs a trace object", None, "trace")
    return WitnessDocument(kind, parts, cert, k, trace)


def _verify_trace(trace: Dict[str, Any], k: int) -> bool:
    lifted = pointset_from_dict(trace.get("lifted") or {}, "trace.lifted.")
    vkf_parts, vkf_cert = _cert_from_dict(trace.get("vkf") or {}, "trace.vkf.")
    if not verify_vkf(lifted, VkfWitness(vkf_parts, vkf_cert, k)):
        logger.info("trace: van Kampen-Flores seed does not verify")
        return False
    d_parts, d_cert = _cert_from_dict(trace.get("descent") or {}, "trace.descent.")
    n = len(lifted) - 4
    special = frozenset((0, n, n + 1, n + 2, n + 3))
    if not conclusions_hold(lifted, special, vkf_parts, d_parts, d_cert):
        logger.info("trace: descent conclusions do not hold")
        return False
    return True


def verify_document(config: PointConfig, doc: WitnessDocument) -> bool:
    """Re-check a witness document against the point set it refers to."""
    if doc.kind == "tverberg":
        return verify_witness(config, TverbergWitness(doc.parts, doc.cert))
    if doc.kind == "vkf":
        return verify_vkf(config, VkfWitness(doc.parts, doc.cert, doc.k))
    if not verify_witness(config, TverbergWitness(doc.parts, doc.cert)):
        return False
    return _verify_trace(doc.trace, doc.k)

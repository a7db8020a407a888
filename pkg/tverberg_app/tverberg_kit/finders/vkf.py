"""Certified search for van Kampen-Flores witnesses with three parts.

From 6k+5 points in R^{3k} pick three pairwise disjoint (2k+1)-subsets whose
hulls meet. Triples are unordered; the canonical representative orders its
parts by their smallest index, and triples are compared lexicographically.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import partial
from itertools import combinations
from typing import Iterator, Optional, Tuple

from tverberg_kit.core.convexity import (
    CandidateTriple,
    IntersectionCertificate,
    Part,
    hull_membership,
    triple_intersection,
    verify_certificate,
)
from tverberg_kit.core.errors import ExhaustionError, InputError
from tverberg_kit.core.rational import PointConfig, RatVector
from tverberg_kit.finders.scan import first_success

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class VkfWitness:
    parts: Tuple[Part, Part, Part]
    cert: IntersectionCertificate
    k: int


def canonical_triples(n: int, size: int) -> Iterator[Tuple[Part, Part, Part]]:
    """Unordered triples of disjoint ``size``-subsets of range(n), canonical order.

    Yields 15,400 triples for n=11, size=3.
    """
    for P in combinations(range(n), size):
        taken = set(P)
        rest_q = [i for i in range(P[0] + 1, n) if i not in taken]
        for Q in combinations(rest_q, size):
            taken_q = taken.union(Q)
            rest_r = [i for i in range(Q[0] + 1, n) if i not in taken_q]
            for R in combinations(rest_r, size):
                yield P, Q, R


def _check_shape(config: PointConfig, k: int) -> None:
    if not isinstance(k, int) or k < 1:
        raise InputError(f"k must be a positive integer, got {k!r}")
    if config.dim != 3 * k:
        raise InputError(f"van Kampen-Flores search for k={k} needs dimension {3 * k}, got {config.dim}")
    if len(config) < 6 * k + 5:
        raise InputError(f"need at least {6 * k + 5} points, got {len(config)}")


def _triple_test(config: PointConfig, avoid: Optional[RatVector], parts) -> Optional[IntersectionCertificate]:
    if avoid is not None and all(_holds(config, p, avoid) for p in parts):
        return None
    return triple_intersection(config, CandidateTriple(parts))


def _holds(config: PointConfig, part: Part, q: RatVector) -> bool:
    members = [config.points[i] for i in part]
    if q[-1] > 0 and all(p[-1] <= 0 for p in members):
        return False
    return hull_membership(q, members) is not None


def find_vkf3(config: PointConfig, k: int, jobs: int = 1, fast: bool = False,
              avoid: Optional[RatVector] = None) -> VkfWitness:
    """First canonical triple of disjoint (2k+1)-subsets with intersecting hulls.

    With ``avoid``, triples whose three hulls all contain that point are
    skipped. With ``fast`` and several jobs, any witness a worker reports
    first is accepted instead of the canonical first one.
    """
    _check_shape(config, k)
    hit, scanned = first_success(partial(_triple_test, config, avoid), canonical_triples(len(config), 2 * k + 1),
                                 jobs, ordered=not fast)
    if hit is None:
        raise ExhaustionError(f"no van Kampen-Flores triple among {scanned} candidates", scanned)
    parts, cert = hit
    logger.debug("vkf witness %s after %d triples", parts, scanned)
    return VkfWitness(parts, cert, k)


def verify_vkf(config: PointConfig, w: VkfWitness) -> bool:
    if not isinstance(w.k, int) or w.k < 1 or config.dim != 3 * w.k:
        return False
    if len(w.parts) != 3 or any(len(p) != 2 * w.k + 1 for p in w.parts):
        return False
    flat = [i for p in w.parts for i in p]
    if len(flat) != len(set(flat)) or any(not 0 <= i < len(config) for i in flat):
        return False
    return verify_certificate(config, w.parts, w.cert)

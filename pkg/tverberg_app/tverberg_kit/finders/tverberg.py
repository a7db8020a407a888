"""Certified search for Tverberg 3-partitions, plus the brute-force oracle.

Partitions are enumerated in canonical order: blocks sorted by their smallest
element, partitions compared as tuples of sorted index tuples. The first
partition whose three hulls meet is the witness.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import partial
from typing import Iterator, List, Optional, Sequence, Tuple

from tverberg_kit.core.convexity import (
    CandidateTriple,
    IntersectionCertificate,
    Part,
    triple_intersection,
    verify_certificate,
)
from tverberg_kit.core.errors import ExhaustionError, InputError, PreconditionError
from tverberg_kit.core.rational import PointConfig
from tverberg_kit.finders.scan import first_success, ordered_map

logger = logging.getLogger(__name__)

Partition = Tuple[Part, Part, Part]
ORACLE_LIMIT = 12


@dataclass(frozen=True)
class TverbergWitness:
    parts: Partition
    cert: IntersectionCertificate


def _subsets_with_first(items: Sequence[int]) -> Iterator[Part]:
    """Subsets of ``items`` (sorted) containing items[0], in tuple order."""
    rest = items[1:]

    def walk(prefix: Part, start: int) -> Iterator[Part]:
        yield prefix
        for j in range(start, len(rest)):
            yield from walk(prefix + (rest[j],), j + 1)

    yield from walk((items[0],), 0)


def canonical_partitions(n: int) -> Iterator[Partition]:
    """All partitions of range(n) into three nonempty blocks, canonical order.

    Generated lazily: the first block holds 0, the second the smallest point
    left over, and tuple order of the blocks gives the order of partitions.
    """
    if n < 3:
        return
    for first in _subsets_with_first(tuple(range(n))):
        left = tuple(i for i in range(n) if i not in first)
        if len(left) < 2:
            continue
        for second in _subsets_with_first(left):
            if len(second) == len(left):
                continue
            third = tuple(i for i in left if i not in second)
            yield first, second, third


def _partition_test(config: PointConfig, parts: Partition) -> Optional[IntersectionCertificate]:
    return triple_intersection(config, CandidateTriple(parts))


def find_tverberg3(config: PointConfig, jobs: int = 1) -> TverbergWitness:
    """First canonical partition into three blocks whose hulls share a point."""
    if len(config) < 3:
        raise InputError("a Tverberg 3-partition needs at least three points")
    if len(config) < 2 * config.dim + 3:
        logger.info("%d points in R^%d is below the 2d+3 threshold; a witness may not exist",
                    len(config), config.dim)
    hit, scanned = first_success(partial(_partition_test, config), canonical_partitions(len(config)), jobs)
    if hit is None:
        raise ExhaustionError(f"no Tverberg 3-partition among {scanned} partitions", scanned)
    parts, cert = hit
    logger.debug("Tverberg witness %s after %d partitions", parts, scanned)
    return TverbergWitness(parts, cert)


def brute_force_all(config: PointConfig, jobs: int = 1) -> List[Tuple[Partition, IntersectionCertificate]]:
    """Every 3-block partition with intersecting hulls, in canonical order."""
    if len(config) > ORACLE_LIMIT:
        raise InputError(f"oracle limited to {ORACLE_LIMIT} points, got {len(config)}")
    partitions = list(canonical_partitions(len(config)))
    certs = ordered_map(partial(_partition_test, config), partitions, jobs)
    return [(parts, cert) for parts, cert in zip(partitions, certs) if cert is not None]


def complete_partition(config: PointConfig, t: CandidateTriple,
                       cert: IntersectionCertificate) -> TverbergWitness:
    """Absorb every index outside ``t`` into the first part; the certificate stays valid."""
    if not verify_certificate(config, t.parts, cert):
        raise PreconditionError("certificate does not verify for the given triple")
    used = t.union()
    leftovers = tuple(i for i in range(len(config)) if i not in used)
    first = tuple(sorted(t.parts[0] + leftovers))
    return TverbergWitness((first, t.parts[1], t.parts[2]), cert)


def verify_witness(config: PointConfig, w: TverbergWitness) -> bool:
    parts = w.parts
    if len(parts) != 3 or any(not p for p in parts):
        return False
    flat = [i for p in parts for i in p]
    if len(flat) != len(set(flat)) or set(flat) != set(range(len(config))):
        return False
    return verify_certificate(config, parts, w.cert)

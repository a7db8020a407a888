"""Descent to the lowest point of a constrained triple intersection.

Given a seed triple on the lifted points, minimise the last coordinate over
the intersection of three disjoint hulls drawn from the base points (A_1
excluded) and the special points the seed already uses. The minimiser Z' is
then carried by a reduced triple that leaves at least two of A_1, M_1..M_4
unused.

Hulls only grow when points are added, so the global minimum is attained on
a partition of the whole allowed set into three blocks. A zero minimum is
read off the base-plane shadows of those partitions; a positive one comes
from a branch and bound over partial assignments.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import partial
from itertools import combinations, product
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from tverberg_kit.core.convexity import (
    CandidateTriple,
    IntersectionCertificate,
    Part,
    caratheodory_reduce,
    carrier_face,
    hull_membership,
    lowest_common_height,
    min_last_coordinate,
    triple_intersection,
    verify_certificate,
)
from tverberg_kit.core.errors import GuaranteeViolatedError, InvariantViolationError, PreconditionError
from tverberg_kit.core.rational import PointConfig, RatVector
from tverberg_kit.finders.scan import first_success
from tverberg_kit.finders.tverberg import Partition, canonical_partitions
from tverberg_kit.reduction.lifting import LiftedInstance

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DescentResult:
    parts: Tuple[Part, Part, Part]
    z_prime: RatVector
    cert: IntersectionCertificate
    unused_special: Tuple[str, ...]


def special_usage(inst: LiftedInstance, parts: Sequence[Sequence[int]]) -> FrozenSet[int]:
    return frozenset(i for p in parts for i in p if i in inst.special_indices)


def conclusions_hold(lifted: PointConfig, special: FrozenSet[int], seed_parts: Sequence[Sequence[int]],
                     parts: Sequence[Sequence[int]], cert: IntersectionCertificate) -> bool:
    """The three descent conclusions, checked exactly.

    The parts must carry the certificate and leave two special points unused;
    special points outside the seed stay out.
    """
    flat = [i for p in parts for i in p]
    if len(parts) != 3 or any(not p for p in parts) or len(flat) != len(set(flat)):
        return False
    if not verify_certificate(lifted, parts, cert):
        return False
    used = frozenset(flat) & special
    if len(special - used) < 2:
        return False
    return used <= frozenset(i for p in seed_parts for i in p) & special


def check_conclusions(inst: LiftedInstance, seed_parts: Sequence[Sequence[int]],
                      parts: Sequence[Sequence[int]], cert: IntersectionCertificate) -> bool:
    return conclusions_hold(inst.lifted, inst.special_indices, seed_parts, parts, cert)


def _check_seed(inst: LiftedInstance, seed: CandidateTriple) -> None:
    lifted = inst.lifted
    if any(not 0 <= i < len(lifted) for p in seed.parts for i in p):
        raise PreconditionError("seed triple refers to points outside the lifted configuration")
    if triple_intersection(lifted, seed) is None:
        raise PreconditionError("seed triple has no common point")
    m2 = lifted.points[inst.mast_indices[1]]
    if all(hull_membership(m2, lifted.subset(p)) is not None for p in seed.parts):
        raise PreconditionError("M2 lies in the seed intersection")


def _reduce_at(lifted: PointConfig, parts: Partition,
               cert: IntersectionCertificate) -> Tuple[Partition, IntersectionCertificate]:
    z = cert.common_point
    reduced, coeffs = [], []
    for coeff in cert.coefficients:
        idx = [i for i, _ in coeff]
        sub, weights = caratheodory_reduce(z, lifted.subset(idx), [w for _, w in coeff])
        chosen = [idx[j] for j in sub]
        face, bary = carrier_face(z, lifted.subset(chosen))
        reduced.append(tuple(chosen[f] for f in face))
        coeffs.append(tuple(zip(reduced[-1], bary)))
    return tuple(reduced), IntersectionCertificate(z, tuple(coeffs))


def _restrict_to_base(lifted: PointConfig, parts: Partition,
                      cert: IntersectionCertificate) -> Tuple[Partition, IntersectionCertificate]:
    parts = tuple(tuple(i for i in p if lifted.points[i][-1] == 0) for p in parts)
    coeffs = tuple(tuple((i, w) for i, w in c if lifted.points[i][-1] == 0) for c in cert.coefficients)
    return parts, IntersectionCertificate(cert.common_point, coeffs)


def _faces_through(lifted: PointConfig, part: Part, z: RatVector):
    """Affinely independent subsets of ``part`` whose relative interior holds z."""
    out = []
    for size in range(1, min(len(part), lifted.dim + 1) + 1):
        for sub in combinations(part, size):
            try:
                face, bary = carrier_face(z, lifted.subset(sub))
            except PreconditionError:
                continue
            if len(face) == len(sub):
                out.append((sub, bary))
    return out


def _fallback_faces(inst: LiftedInstance, parts: Partition, cert: IntersectionCertificate,
                    seed_parts: Sequence[Sequence[int]]) -> Optional[Tuple[Partition, IntersectionCertificate]]:
    """Pick one carrier face per part so that at least two special points stay unused."""
    z = cert.common_point
    options = []
    for part in parts:
        by_usage: Dict[FrozenSet[int], Tuple[Part, Tuple[Fraction, ...]]] = {}
        for sub, bary in _faces_through(inst.lifted, part, z):
            usage = special_usage(inst, [sub])
            if usage not in by_usage:
                by_usage[usage] = (sub, bary)
        ranked = sorted(by_usage.items(), key=lambda kv: (len(kv[0]), len(kv[1][0]), kv[1][0]))
        if not ranked:
            return None
        options.append([choice for _, choice in ranked])
    for combo in product(*options):
        chosen = tuple(sub for sub, _ in combo)
        candidate = IntersectionCertificate(z, tuple(tuple(zip(sub, bary)) for sub, bary in combo))
        if check_conclusions(inst, seed_parts, chosen, candidate):
            return chosen, candidate
    return None


def _finish(inst: LiftedInstance, seed: CandidateTriple, parts: Partition,
            cert: IntersectionCertificate) -> Optional[DescentResult]:
    lifted = inst.lifted
    reduced, rcert = _reduce_at(lifted, parts, cert)
    if rcert.common_point[-1] == 0:
        reduced, rcert = _restrict_to_base(lifted, reduced, rcert)
    if not check_conclusions(inst, seed.parts, reduced, rcert):
        picked = _fallback_faces(inst, parts, cert, seed.parts)
        if picked is None:
            return None
        reduced, rcert = picked
        if rcert.common_point[-1] == 0:
            reduced, rcert = _restrict_to_base(lifted, reduced, rcert)
        if not check_conclusions(inst, seed.parts, reduced, rcert):
            return None
    unused = sorted(inst.special_indices - special_usage(inst, reduced))
    return DescentResult(reduced, rcert.common_point, rcert, tuple(inst.special_name(i) for i in unused))


def _canonical(parts: Sequence[Sequence[int]]) -> Partition:
    return tuple(sorted(tuple(sorted(p)) for p in parts))


def _has_base_triple(lifted: PointConfig, ground: Sequence[int], jobs: int) -> bool:
    """Whether some partition of the height-0 allowed points has meeting hulls."""
    candidates = (tuple(tuple(ground[j] for j in block) for block in parts)
                  for parts in canonical_partitions(len(ground)))
    hit, _ = first_success(partial(_base_test, lifted), candidates, jobs)
    return hit is not None


def _base_test(lifted: PointConfig, parts: Partition) -> Optional[bool]:
    return True if triple_intersection(lifted, CandidateTriple(parts)) is not None else None


def _branch_and_bound(lifted: PointConfig, elements: Sequence[int]) -> Tuple[Optional[Fraction], List[Partition]]:
    """Global minimum over all 3-block partitions of ``elements`` and every partition attaining it.

    A node assigns a prefix of ``elements``; its bound lets every unassigned
    point join all three blocks, which can only lower the minimum. Nodes whose
    bound exceeds the best leaf are cut.
    """
    best: Optional[Fraction] = None
    winners: List[Partition] = []
    blocks: List[List[int]] = []

    def visit(pos: int) -> None:
        nonlocal best, winners
        rest = list(elements[pos:])
        if 3 - len(blocks) > len(rest):
            return
        sets = [lifted.subset(b + rest) for b in blocks] + [lifted.subset(rest)] * (3 - len(blocks))
        bound = lowest_common_height(sets)
        if bound is None or (best is not None and bound > best):
            return
        if not rest:
            if best is None or bound < best:
                best, winners = bound, []
            winners.append(_canonical(blocks))
            return
        x = elements[pos]
        for b in blocks:
            b.append(x)
            visit(pos + 1)
            b.pop()
        if len(blocks) < 3:
            blocks.append([x])
            visit(pos + 1)
            blocks.pop()

    visit(0)
    return best, winners


def lemma1_descent(inst: LiftedInstance, seed_triple: CandidateTriple, jobs: int = 1) -> DescentResult:
    """Lowest point Z' of a constrained triple intersection and a reduced triple carrying it.

    Minimisers are tried in canonical partition order; the first whose reduced
    triple meets all three conclusions is returned.
    """
    _check_seed(inst, seed_triple)
    lifted = inst.lifted
    n = len(inst.base)
    allowed = sorted(set(range(1, n)) | (seed_triple.union() & inst.special_indices))
    ground = [i for i in allowed if lifted.points[i][-1] == 0]

    if _has_base_triple(lifted, ground, jobs):
        best = Fraction(0)
        shadows: Dict[Partition, bool] = {}
        tried = 0
        for parts in canonical_partitions(len(allowed)):
            mapped = tuple(tuple(allowed[j] for j in block) for block in parts)
            shadow = [tuple(i for i in p if i in ground) for p in mapped]
            if not all(shadow):
                continue
            key = _canonical(shadow)
            if key not in shadows:
                shadows[key] = _base_test(lifted, key) is not None
            if shadows[key]:
                tried += 1
                found = _try_minimizer(inst, seed_triple, mapped, best)
                if found is not None:
                    logger.debug("descent reached the base plane at minimizer %d", tried)
                    return found
    else:
        masts_first = [i for i in allowed if i not in ground] + ground
        best, minimizers = _branch_and_bound(lifted, masts_first)
        if best is None:
            raise GuaranteeViolatedError("no intersecting triple in the allowed set")
        logger.debug("descent minimum %s with %d minimizers", best, len(minimizers))
        seed_free = any(not set(p) & set(inst.mast_indices[2:]) for p in seed_triple.parts)
        if seed_free and best >= inst.mast_heights[1]:
            raise InvariantViolationError(f"descent minimum {best} is not below M2")
        for mapped in sorted(minimizers):
            found = _try_minimizer(inst, seed_triple, mapped, best)
            if found is not None:
                return found
    raise GuaranteeViolatedError(f"no minimizer at height {best} satisfies the descent conclusions")


def _try_minimizer(inst: LiftedInstance, seed: CandidateTriple, parts: Partition,
                   best: Fraction) -> Optional[DescentResult]:
    result = min_last_coordinate(inst.lifted, CandidateTriple(parts))
    if result is None or result[0] != best:
        raise InvariantViolationError(f"minimizer {parts} does not attain {best}")
    return _finish(inst, seed, parts, result[1])

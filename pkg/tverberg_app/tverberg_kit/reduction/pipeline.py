"""From 6k+1 base points to a certified Tverberg 3-partition via the lifting.

``run_reduction`` is a small state machine: lift, find a van Kampen-Flores
triple on the lifted points whose hulls do not all contain M_2, descend, split into the two cases and project.
Any shortfall of the analytic constants shows up as a retry (heights doubled,
later A_1 nudged); a partition is only ever returned after exact
verification against the caller's points.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from tverberg_kit.core.convexity import CandidateTriple, IntersectionCertificate, Part, is_vertex, triple_intersection
from tverberg_kit.core.errors import (
    ExhaustionError,
    GuaranteeViolatedError,
    InvariantViolationError,
    PreconditionError,
    ReductionFailedError,
)
from tverberg_kit.core.rational import PointConfig, RatVector, is_general_position, vec_add, vec_scale
from tverberg_kit.finders.tverberg import TverbergWitness, complete_partition, verify_witness
from tverberg_kit.finders.vkf import VkfWitness, find_vkf3
from tverberg_kit.reduction.descent import DescentResult, lemma1_descent
from tverberg_kit.reduction.lifting import (
    LiftedInstance,
    central_project,
    compute_delta_bound,
    compute_epsilon,
    compute_mast_heights,
    orthogonal_project,
)
from tverberg_kit.settings import DEFAULT_RETRIES
from tverberg_kit.utils.generate import SplitMix64

logger = logging.getLogger(__name__)

PERTURB_AFTER = 3
PERTURB_SEED = 0x7E5B
PERTURB_DRAWS = 16


@dataclass(frozen=True)
class CaseOutcome:
    case_tag: int
    parts: Tuple[Part, Part, Part]
    certificate: Optional[IntersectionCertificate]
    highest_vertices: Optional[Tuple[int, int, int]] = None

    @property
    def needs_retry(self) -> bool:
        return self.certificate is None


@dataclass(frozen=True)
class ReductionTrace:
    """Everything needed to re-verify a reduction run.

    ``instance`` and ``order`` describe the lifted run: lifted index i < n is
    the caller's point ``order[i]`` (with index 0 possibly nudged). The VKF
    witness, descent and highest vertices use lifted indices; projected_parts
    and final use the caller's indices.
    """

    vkf_witness: VkfWitness
    descent: DescentResult
    case_tag: int
    highest_vertices: Optional[Tuple[int, int, int]]
    projected_parts: Tuple[Part, Part, Part]
    retries: int
    final: TverbergWitness
    instance: LiftedInstance
    order: Tuple[int, ...]
    attempts: Tuple[Dict[str, object], ...] = field(default=())


def case_split(inst: LiftedInstance, d: DescentResult) -> CaseOutcome:
    """Project a descent result onto the base points.

    Case 1: a part lies in the base; restrict every part to the base plane.
    Case 2: each part holds exactly one mast and none holds A_1; the lowest
    part is projected orthogonally, the other two centrally from their mast.
    """
    n = len(inst.base)
    lifted = inst.lifted.points
    if any(all(i < n for i in p) for p in d.parts):
        restricted = tuple(tuple(i for i in p if i < n) for p in d.parts)
        if any(not p for p in restricted):
            raise InvariantViolationError("case 1 restriction emptied a part")
        cert = triple_intersection(inst.base, CandidateTriple(restricted))
        if cert is None:
            raise InvariantViolationError("case 1 restriction lost the common point")
        return CaseOutcome(1, restricted, cert)

    masts = [[i for i in p if inst.is_mast(i)] for p in d.parts]
    if any(len(m) != 1 for m in masts) or any(0 in p for p in d.parts):
        raise InvariantViolationError(f"descent parts {d.parts} match neither case")
    ranked = sorted(range(3), key=lambda j: lifted[masts[j][0]][-1])
    W = tuple(masts[j][0] for j in ranked)

    lowest = d.parts[ranked[0]]
    first = []
    for i in lowest:
        image = orthogonal_project(lifted[i])
        idx = inst.base.index_of(image[:-1])
        if idx is None:
            raise InvariantViolationError(f"orthogonal image of point {i} is not a base point")
        first.append(idx)
    projected = [tuple(sorted(set(first)))]
    for j, w in zip(ranked[1:], W[1:]):
        members = []
        for i in d.parts[j]:
            if i == w:
                continue
            image = central_project(lifted[w], lifted[i])
            if image != lifted[i]:
                raise InvariantViolationError(f"central image of point {i} left the base")
            members.append(i)
        projected.append(tuple(members))
    parts = tuple(projected)
    if any(not p for p in parts):
        logger.warning("case 2 projection emptied a part; requesting retry")
        return CaseOutcome(2, parts, None, W)
    return CaseOutcome(2, parts, triple_intersection(inst.base, CandidateTriple(parts)), W)


def _prepare(base: PointConfig, k: int) -> Tuple[PointConfig, Tuple[int, ...]]:
    if not isinstance(k, int) or k < 1:
        raise PreconditionError(f"k must be a positive integer, got {k!r}")
    if len(base) != 6 * k + 1 or base.dim != 3 * k - 1:
        raise PreconditionError(f"need {6 * k + 1} points in R^{3 * k - 1}, got {len(base)} in R^{base.dim}")
    report = is_general_position(base)
    if not report:
        raise PreconditionError(f"base is not in general position (points {report.violator})")
    first = min(range(len(base)), key=lambda i: (base.points[i], i))
    order = (first,) + tuple(i for i in range(len(base)) if i != first)
    return base.permuted(order), order


def _perturbed(work: PointConfig, anchor: RatVector, epsilon: Fraction, failures: int) -> Optional[PointConfig]:
    """Nudge A_1 by less than epsilon/4 in L-infinity, shrinking with each failure."""
    rng = SplitMix64(PERTURB_SEED + failures)
    scale = epsilon / 8 / (1 << (failures - PERTURB_AFTER))
    for _ in range(PERTURB_DRAWS):
        candidate = work.replace_point(0, vec_add(anchor, vec_scale(rng.unit_offset(work.dim), scale)))
        if is_general_position(candidate) and is_vertex(candidate, 0):
            return candidate
    return None


def _to_caller(parts: Sequence[Part], order: Sequence[int]) -> Tuple[Part, Part, Part]:
    return tuple(tuple(sorted(order[i] for i in p)) for p in parts)


def run_reduction(base: PointConfig, k: int, retries: int = DEFAULT_RETRIES, jobs: int = 1,
                  fast: bool = False, mast_heights: Optional[Sequence[Fraction]] = None) -> ReductionTrace:
    """Certified Tverberg 3-partition of 6k+1 points in R^{3k-1} through the lifting.

    Args:
        base: points in general position.
        k: the van Kampen-Flores parameter.
        retries: restarts allowed after a failed attempt.
        jobs: worker processes for the candidate scans.
        fast: accept any van Kampen-Flores witness instead of the canonical first.
        mast_heights: override for the computed heights.

    Raises:
        PreconditionError: wrong shape or not in general position.
        ReductionFailedError: the retry budget ran out.
    """
    work, order = _prepare(base, k)
    anchor = work.points[0]
    epsilon = compute_epsilon(work)
    delta = compute_delta_bound(work, epsilon)
    heights = tuple(Fraction(h) for h in mast_heights) if mast_heights else compute_mast_heights(work, delta)
    logger.info("epsilon=%s delta=%s heights=%s", epsilon, delta, [str(h) for h in heights])

    attempts: List[Dict[str, object]] = []
    current = work
    for attempt in range(retries + 1):
        record: Dict[str, object] = {
            "attempt": attempt,
            "heights": [str(h) for h in heights],
            "perturbation": None if current is work else [str(x) for x in current.points[0]],
        }
        attempts.append(record)
        inst = LiftedInstance.build(current, k, heights, epsilon, delta)
        m2 = inst.lifted.points[inst.mast_indices[1]]
        descent = None
        try:
            vkf = find_vkf3(inst.lifted, k, jobs=jobs, fast=fast, avoid=m2)
        except ExhaustionError as exc:
            record["outcome"] = f"seed: {exc}"
        else:
            try:
                descent = lemma1_descent(inst, CandidateTriple(vkf.parts), jobs=jobs)
            except (GuaranteeViolatedError, PreconditionError) as exc:
                record["outcome"] = f"descent: {exc}"
        if descent is not None:
            outcome = case_split(inst, descent)
            record["case"] = outcome.case_tag
            if outcome.needs_retry:
                record["outcome"] = "projection did not intersect"
            else:
                projected = _to_caller(outcome.parts, order)
                cert = triple_intersection(base, CandidateTriple(projected))
                if cert is None:
                    record["outcome"] = "projected partition fails on the unperturbed points"
                else:
                    final = complete_partition(base, CandidateTriple(projected), cert)
                    if not verify_witness(base, final):
                        raise InvariantViolationError("completed partition failed verification")
                    record["outcome"] = "verified"
                    logger.info("reduction verified in case %d after %d retries", outcome.case_tag, attempt)
                    return ReductionTrace(vkf, descent, outcome.case_tag, outcome.highest_vertices, projected,
                                          attempt, final, inst, order, tuple(attempts))

        logger.warning("attempt %d failed (%s); doubling mast heights", attempt, record["outcome"])
        heights = tuple(2 * h for h in heights)
        failures = attempt + 1
        if failures >= PERTURB_AFTER:
            nudged = _perturbed(work, anchor, epsilon, failures)
            if nudged is not None:
                current = nudged
    raise ReductionFailedError(f"no verified partition after {retries + 1} attempts", attempts)

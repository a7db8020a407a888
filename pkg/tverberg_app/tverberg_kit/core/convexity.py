"""Convex-hull predicates built on the exact LP.

Hull membership, certified triple intersection, last-coordinate minimisation
over a triple intersection, Caratheodory reduction, carrier faces, vertex
tests and L-infinity distance bounds. Ties are always broken by the smallest
index so repeated runs give identical answers.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple

from tverberg_kit.core.errors import InputError, InvariantViolationError, PreconditionError
from tverberg_kit.core.lp import LinearProgram, LPStatus, solve
from tverberg_kit.core.rational import (
    ONE,
    ZERO,
    PointConfig,
    RatVector,
    combine,
    is_affinely_independent,
    null_vector,
    solve_exact,
)

Part = Tuple[int, ...]
Coefficients = Tuple[Tuple[int, Fraction], ...]


@dataclass(frozen=True)
class IntersectionCertificate:
    """A common point and, per part, the convex weights reproducing it."""

    common_point: RatVector
    coefficients: Tuple[Coefficients, Coefficients, Coefficients]


@dataclass(frozen=True)
class CandidateTriple:
    """Three pairwise disjoint nonempty index sets, each stored sorted."""

    parts: Tuple[Part, Part, Part]

    def __post_init__(self):
        if len(self.parts) != 3:
            raise InputError("a candidate triple has exactly three parts")
        parts = tuple(tuple(sorted(p)) for p in self.parts)
        seen = set()
        for p in parts:
            if not p:
                raise InputError("candidate parts must be nonempty")
            if len(set(p)) != len(p) or seen.intersection(p):
                raise InputError("candidate parts must be pairwise disjoint")
            seen.update(p)
        object.__setattr__(self, "parts", parts)

    @classmethod
    def of(cls, a: Iterable[int], b: Iterable[int], c: Iterable[int]) -> "CandidateTriple":
        return cls((tuple(a), tuple(b), tuple(c)))

    def union(self) -> frozenset:
        return frozenset(self.parts[0] + self.parts[1] + self.parts[2])


def validate_triple(config: PointConfig, t: CandidateTriple) -> None:
    for part in t.parts:
        for i in part:
            if not 0 <= i < len(config):
                raise InputError(f"index {i} out of range for a config of {len(config)} points")


def _bbox(points: Sequence[RatVector]) -> Tuple[List[Fraction], List[Fraction]]:
    dim = len(points[0])
    return ([min(p[c] for p in points) for c in range(dim)],
            [max(p[c] for p in points) for c in range(dim)])


def boxes_overlap(parts: Sequence[Sequence[RatVector]]) -> bool:
    """Necessary condition for the hulls to meet: the bounding boxes do."""
    boxes = [_bbox(pts) for pts in parts]
    for c in range(len(boxes[0][0])):
        if max(b[0][c] for b in boxes) > min(b[1][c] for b in boxes):
            return False
    return True


def hull_membership(q: RatVector, S: Sequence[RatVector],
                    preference: Optional[Sequence[Fraction]] = None) -> Optional[RatVector]:
    """Convex weights of ``S`` reproducing ``q``, or None when q is outside the hull.

    ``preference`` is an optional cost per point; the returned weights then
    minimise it, which makes the answer canonical.
    """
    if not S:
        return None
    dim = len(q)
    if any(len(p) != dim for p in S):
        raise InputError("point dimension differs from the query dimension")
    n = len(S)
    A_eq = [tuple(p[c] for p in S) for c in range(dim)]
    A_eq.append((ONE,) * n)
    lp = LinearProgram(num_vars=n, objective=tuple(preference) if preference else (),
                       A_eq=tuple(A_eq), b_eq=tuple(q) + (ONE,))
    out = solve(lp)
    if out.status != LPStatus.OPTIMAL:
        return None
    return out.solution


def _intersection_lp(part_points: Sequence[Sequence[RatVector]], dim: int,
                     minimize_last: bool) -> LinearProgram:
    sizes = [len(p) for p in part_points]
    n_lambda = sum(sizes)
    num_vars = n_lambda + dim
    A_eq: List[Tuple[Fraction, ...]] = []
    offset = 0
    for pts, size in zip(part_points, sizes):
        for c in range(dim):
            row = [ZERO] * num_vars
            for j, p in enumerate(pts):
                row[offset + j] = p[c]
            row[n_lambda + c] = -ONE
            A_eq.append(tuple(row))
        offset += size
    offset = 0
    for size in sizes:
        row = [ZERO] * num_vars
        for j in range(size):
            row[offset + j] = ONE
        A_eq.append(tuple(row))
        offset += size
    b_eq = (ZERO,) * (dim * len(sizes)) + (ONE,) * len(sizes)
    objective = [ZERO] * num_vars
    if minimize_last:
        objective[num_vars - 1] = ONE
    mask = (True,) * n_lambda + (False,) * dim
    return LinearProgram(num_vars=num_vars, objective=tuple(objective), A_eq=tuple(A_eq),
                         b_eq=b_eq, nonneg_mask=mask)


def _certificate_from(parts: Sequence[Part], x: RatVector, dim: int) -> IntersectionCertificate:
    n_lambda = sum(len(p) for p in parts)
    coeffs = []
    offset = 0
    for part in parts:
        coeffs.append(tuple((idx, x[offset + j]) for j, idx in enumerate(part)))
        offset += len(part)
    return IntersectionCertificate(common_point=tuple(x[n_lambda:n_lambda + dim]),
                                   coefficients=tuple(coeffs))


def _solve_triple(config: PointConfig, t: CandidateTriple, minimize_last: bool):
    validate_triple(config, t)
    part_points = [config.subset(p) for p in t.parts]
    if not boxes_overlap(part_points):
        return None
    out = solve(_intersection_lp(part_points, config.dim, minimize_last))
    if out.status == LPStatus.INFEASIBLE:
        return None
    if out.status == LPStatus.UNBOUNDED:
        raise InvariantViolationError("hull intersection LP reported unbounded")
    cert = _certificate_from(t.parts, out.solution, config.dim)
    if not verify_certificate(config, t.parts, cert):
        raise InvariantViolationError("intersection certificate failed re-verification")
    return cert


def triple_intersection(config: PointConfig, t: CandidateTriple) -> Optional[IntersectionCertificate]:
    """Certificate that the three hulls share a point, or None."""
    return _solve_triple(config, t, minimize_last=False)


def pair_intersection(P: Sequence[RatVector], Q: Sequence[RatVector]) -> Optional[RatVector]:
    """A point common to hull(P) and hull(Q), or None."""
    if not P or not Q:
        return None
    if not boxes_overlap([P, Q]):
        return None
    dim = len(P[0])
    out = solve(_intersection_lp([P, Q], dim, minimize_last=False))
    if out.status != LPStatus.OPTIMAL:
        return None
    return tuple(out.solution[len(P) + len(Q):])


def lowest_common_height(point_sets: Sequence[Sequence[RatVector]]) -> Optional[Fraction]:
    """Minimum last coordinate over the intersection of the hulls; the sets may overlap."""
    if any(not s for s in point_sets):
        return None
    if not boxes_overlap(point_sets):
        return None
    out = solve(_intersection_lp(point_sets, len(point_sets[0][0]), minimize_last=True))
    if out.status == LPStatus.UNBOUNDED:
        raise InvariantViolationError("hull intersection LP reported unbounded")
    return out.value if out.status == LPStatus.OPTIMAL else None


def min_last_coordinate(config: PointConfig,
                        t: CandidateTriple) -> Optional[Tuple[Fraction, IntersectionCertificate]]:
    """Exact minimum of the last coordinate over the triple intersection."""
    cert = _solve_triple(config, t, minimize_last=True)
    if cert is None:
        return None
    return cert.common_point[-1], cert


def verify_certificate(config: PointConfig, parts: Sequence[Sequence[int]],
                       cert: IntersectionCertificate) -> bool:
    """Exact substitution check of an IntersectionCertificate against ``parts``.

    Weighted indices must belong to their part; a part may hold extra
    unweighted points.
    """
    if len(parts) != 3 or len(cert.coefficients) != 3:
        return False
    if len(cert.common_point) != config.dim:
        return False
    for part, coeffs in zip(parts, cert.coefficients):
        members = set(part)
        idx = [i for i, _ in coeffs]
        if not coeffs or len(set(idx)) != len(idx) or not members.issuperset(idx):
            return False
        if any(not 0 <= i < len(config) for i in idx):
            return False
        weights = [w for _, w in coeffs]
        if any(w < 0 for w in weights) or sum(weights, ZERO) != ONE:
            return False
        if combine(config.subset(idx), weights) != tuple(cert.common_point):
            return False
    return True


def _affine_matrix(points: Sequence[RatVector]) -> List[List[Fraction]]:
    dim = len(points[0])
    rows = [[p[c] for p in points] for c in range(dim)]
    rows.append([ONE] * len(points))
    return rows


def caratheodory_reduce(q: RatVector, S: Sequence[RatVector],
                        coefficients: Optional[Sequence[Fraction]] = None
                        ) -> Tuple[Tuple[int, ...], RatVector]:
    """Shrink a convex representation of ``q`` to an affinely independent support.

    Returns (indices into S, weights). Without starting ``coefficients`` the
    representation comes from an LP preferring low indices. Each reduction
    step cancels one weight along an affine dependence; ties go to the
    smallest index.
    """
    if coefficients is None:
        weights = hull_membership(q, S, preference=[Fraction(j) for j in range(len(S))])
        if weights is None:
            raise PreconditionError("point is not in the convex hull of the given set")
    else:
        weights = tuple(coefficients)
        if (len(weights) != len(S) or any(w < 0 for w in weights)
                or sum(weights, ZERO) != ONE or combine(S, weights) != tuple(q)):
            raise PreconditionError("starting coefficients do not represent the point")
    lam = list(weights)
    support = [j for j, w in enumerate(lam) if w > 0]
    while not is_affinely_independent([S[j] for j in support]):
        mu = null_vector(_affine_matrix([S[j] for j in support]))
        if mu is None:
            raise InvariantViolationError("dependent support without a kernel vector")
        last = next(v for v in reversed(mu) if v != 0)
        if last < 0:
            mu = tuple(-v for v in mu)
        best, drop = None, None
        for pos, j in enumerate(support):
            if mu[pos] > 0:
                ratio = lam[j] / mu[pos]
                if best is None or ratio < best:
                    best, drop = ratio, j
        for pos, j in enumerate(support):
            lam[j] -= best * mu[pos]
        lam[drop] = ZERO
        support = [j for j in support if lam[j] > 0]
    return tuple(support), tuple(lam[j] for j in support)


def carrier_face(q: RatVector, simplex: Sequence[RatVector]) -> Tuple[Tuple[int, ...], RatVector]:
    """Vertices with strictly positive barycentric coordinate, with those coordinates."""
    if not simplex:
        raise PreconditionError("empty simplex")
    if not is_affinely_independent(simplex):
        raise PreconditionError("carrier_face needs an affinely independent vertex set")
    bary = solve_exact(_affine_matrix(simplex), tuple(q) + (ONE,))
    if bary is None or any(b < 0 for b in bary):
        raise PreconditionError("point is not in the simplex")
    face = tuple(j for j, b in enumerate(bary) if b > 0)
    return face, tuple(bary[j] for j in face)


def is_vertex(config: PointConfig, i: int) -> bool:
    """True iff point i lies outside the hull of all the other points."""
    if not 0 <= i < len(config):
        raise InputError(f"index {i} out of range")
    others = [p for j, p in enumerate(config.points) if j != i]
    return hull_membership(config.points[i], others) is None


def linf_distance_lower(P: Sequence[RatVector], Q1: Sequence[RatVector],
                        Q2: Sequence[RatVector]) -> Fraction:
    """Exact L-infinity distance between hull(P) and hull(Q1) & hull(Q2).

    A valid lower bound on the Euclidean distance.
    """
    if not P or not Q1 or not Q2:
        raise PreconditionError("distance between empty sets")
    dim = len(P[0])
    if any(len(p) != dim for p in list(Q1) + list(Q2)):
        raise InputError("mixed dimensions")
    a, b, c = len(P), len(Q1), len(Q2)
    n = a + b + c + 1
    t = n - 1
    A_le, A_eq = [], []
    for k in range(dim):
        diff = [ZERO] * n
        for j, p in enumerate(P):
            diff[j] = p[k]
        for j, q in enumerate(Q1):
            diff[a + j] = -q[k]
        up = list(diff)
        up[t] = -ONE
        down = [-v for v in diff]
        down[t] = -ONE
        A_le.extend([tuple(up), tuple(down)])
        meet = [ZERO] * n
        for j, q in enumerate(Q1):
            meet[a + j] = q[k]
        for j, r in enumerate(Q2):
            meet[a + b + j] = -r[k]
        A_eq.append(tuple(meet))
    for start, size in ((0, a), (a, b), (a + b, c)):
        row = [ZERO] * n
        for j in range(start, start + size):
            row[j] = ONE
        A_eq.append(tuple(row))
    objective = [ZERO] * n
    objective[t] = ONE
    lp = LinearProgram(num_vars=n, objective=tuple(objective), A_eq=tuple(A_eq),
                       b_eq=(ZERO,) * dim + (ONE, ONE, ONE), A_le=tuple(A_le),
                       b_le=(ZERO,) * (2 * dim))
    out = solve(lp)
    if out.status == LPStatus.INFEASIBLE:
        raise PreconditionError("the two hulls defining the target set do not meet")
    if out.status == LPStatus.UNBOUNDED:
        raise InvariantViolationError("distance LP reported unbounded")
    return out.value

"""Lifting of the base configuration and the constants that drive it.

The base points A_1..A_n sit in R^{d}; the lifted configuration lives in
R^{d+1} with the base at height 0 and four masts (A_1, m_j) above the hull
vertex A_1 (always index 0 here). epsilon, delta and the mast heights follow
the distance recipes of the construction; correctness downstream never rests
on them, since every final partition is certified by exact LP.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Callable, FrozenSet, List, Optional, Sequence, Tuple

from sympy import Matrix, Poly, Rational, Symbol

from tverberg_kit.core.convexity import is_vertex, linf_distance_lower, pair_intersection
from tverberg_kit.core.errors import (
    DegenerateInputError,
    InputError,
    InvariantViolationError,
    PreconditionError,
    ProjectionUndefinedError,
)
from tverberg_kit.core.rational import (
    ONE,
    ZERO,
    PointConfig,
    RatVector,
    is_affinely_independent,
    rank,
    sqrt_lower,
    sqrt_upper,
    squared_norm,
    vec_add,
    vec_scale,
    vec_sub,
)

logger = logging.getLogger(__name__)

SPECIAL_NAMES = ("A1", "M1", "M2", "M3", "M4")
DELTA_TOLERANCE = Fraction(1, 1 << 10)
REFINE_ROUNDS = 8


def orthogonal_project(p: RatVector) -> RatVector:
    if not p:
        raise InputError("cannot project a zero-dimensional point")
    return tuple(p[:-1]) + (ZERO,)


def central_project(K: RatVector, p: RatVector) -> RatVector:
    """Where the line through K and p meets the base hyperplane."""
    if len(K) != len(p) or not K:
        raise InputError("central projection needs two points of the same dimension")
    h_k, h_p = K[-1], p[-1]
    if h_k == 0:
        raise ProjectionUndefinedError("projection centre lies in the base hyperplane")
    if h_k == h_p:
        raise ProjectionUndefinedError("point is at the height of the projection centre")
    t = h_k / (h_k - h_p)
    image = vec_add(K, vec_scale(vec_sub(p, K), t))
    return tuple(image[:-1]) + (ZERO,)


# ---------------------------------------------------------------------------
# epsilon
# ---------------------------------------------------------------------------

def _min_positive_descending(full: Tuple[int, ...], dist: Callable[[Tuple[int, ...]], Fraction]) -> Optional[Fraction]:
    """Smallest positive dist(S) over nonempty S within ``full``.

    dist must be nonincreasing under inclusion, so a set with positive
    distance dominates all of its subsets and only zero-distance sets are
    expanded downward.
    """
    best: Optional[Fraction] = None
    stack = [full]
    seen = {full}
    while stack:
        s = stack.pop()
        d = dist(s)
        if d > 0:
            if best is None or d < best:
                best = d
            continue
        if len(s) > 1:
            for x in s:
                sub = tuple(i for i in s if i != x)
                if sub not in seen:
                    seen.add(sub)
                    stack.append(sub)
    return best


def _disjoint_pairs(n: int) -> List[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
    """Unordered pairs of disjoint nonempty subsets of range(n)."""
    out = []
    for mask in range(1, 3 ** n):
        digits, m = [], mask
        for _ in range(n):
            digits.append(m % 3)
            m //= 3
        a = tuple(i for i, d in enumerate(digits) if d == 1)
        b = tuple(i for i, d in enumerate(digits) if d == 2)
        if a and b and a[0] < b[0]:
            out.append((a, b))
    out.sort()
    return out


def compute_epsilon(base: PointConfig) -> Fraction:
    """One sixteenth of the smallest positive distance in the considered family.

    The family holds the L-infinity distances from every point to the hull of
    every subset of the others, and from every hull(P1) to hull(P2) & hull(P3)
    over pairwise disjoint triples whose last two hulls meet.
    """
    n = len(base)
    if n == 0:
        raise InputError("epsilon of an empty configuration")
    pts = base.points
    best: Optional[Fraction] = None

    def keep(d: Optional[Fraction]) -> None:
        nonlocal best
        if d is not None and (best is None or d < best):
            best = d

    for i in range(n):
        others = tuple(j for j in range(n) if j != i)
        if not others:
            continue
        keep(_min_positive_descending(
            others, lambda s, i=i: linf_distance_lower([pts[i]], [pts[j] for j in s], [pts[j] for j in s])))

    pairs = 0
    for a, b in _disjoint_pairs(n):
        used = set(a) | set(b)
        rest = tuple(i for i in range(n) if i not in used)
        if not rest:
            continue
        Q1, Q2 = [pts[j] for j in a], [pts[j] for j in b]
        if pair_intersection(Q1, Q2) is None:
            continue
        pairs += 1
        keep(_min_positive_descending(
            rest, lambda s, Q1=Q1, Q2=Q2: linf_distance_lower([pts[j] for j in s], Q1, Q2)))

    if best is None:
        raise DegenerateInputError("no positive distance in the configuration")
    logger.debug("epsilon from %d intersecting pairs, minimum distance %s", pairs, best)
    return best / 16


# ---------------------------------------------------------------------------
# delta
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class QualifyingPair:
    first: Tuple[int, ...]
    second: Tuple[int, ...]
    point: RatVector


def _directions(points: Sequence[RatVector]) -> List[RatVector]:
    return [vec_sub(p, points[0]) for p in points[1:]]


def qualifying_pairs(base: PointConfig) -> List[QualifyingPair]:
    """Disjoint subset pairs, neither a single point, whose hulls meet in one point.

    One-point intersection is certified by independence of the two direction
    spaces together with a common point.
    """
    n, dim = len(base), base.dim
    out = []
    for a_size in range(2, dim + 1):
        for U in combinations(range(n), a_size):
            U_pts = base.subset(U)
            if not is_affinely_independent(U_pts):
                continue
            for b_size in range(2, dim + 3 - a_size):
                rest = [i for i in range(U[0] + 1, n) if i not in U]
                for V in combinations(rest, b_size):
                    V_pts = base.subset(V)
                    if not is_affinely_independent(V_pts):
                        continue
                    dirs = _directions(U_pts) + _directions(V_pts)
                    if rank(dirs) != len(dirs):
                        continue
                    x = pair_intersection(U_pts, V_pts)
                    if x is not None:
                        out.append(QualifyingPair(U, V, x))
    return out


def _sym(q: Fraction) -> Rational:
    return Rational(q.numerator, q.denominator)


def _gram(rows: Sequence[RatVector], cols: Sequence[RatVector]) -> Matrix:
    return Matrix([[_sym(sum((x * y for x, y in zip(r, c)), ZERO)) for c in cols] for r in rows])


def _cos_squared_poly(U_dirs: Sequence[RatVector], V_dirs: Sequence[RatVector]) -> Poly:
    """Characteristic polynomial whose largest root is cos^2 of the smallest principal angle."""
    Gu, Gv, C = _gram(U_dirs, U_dirs), _gram(V_dirs, V_dirs), _gram(U_dirs, V_dirs)
    x = Symbol("x")
    M = Gu.inv() * C * Gv.inv() * C.T
    return Poly(M.charpoly(x).as_expr(), x)


def _largest_root_interval(poly: Poly, width: Fraction) -> Tuple[Fraction, Fraction]:
    intervals = poly.intervals(eps=_sym(width))
    (lo, hi), _ = max(intervals, key=lambda item: Fraction(str(item[0][1])))
    return Fraction(str(lo)), Fraction(str(hi))


def half_angle_sine_lower(U_pts: Sequence[RatVector], V_pts: Sequence[RatVector]) -> Optional[Fraction]:
    """Rational s with (1 - 2^-10) sin(a/2) < s <= sin(a/2), a the smallest principal angle.

    None when the direction spaces share a direction (a = 0). If the root
    isolation has not reached that tolerance after REFINE_ROUNDS rounds, the
    looser certified lower bound of the last round is returned.
    """
    poly = _cos_squared_poly(_directions(U_pts), _directions(V_pts))
    if poly.eval(1) == 0:
        return None
    bits = 24
    sin_lo = ZERO
    for _ in range(REFINE_ROUNDS):
        width = Fraction(1, 1 << (2 * bits))
        lam_lo, lam_hi = _largest_root_interval(poly, width)
        if lam_lo >= 1:
            return None
        lam_lo, lam_hi = max(lam_lo, ZERO), min(lam_hi, ONE)
        cos_hi = min(sqrt_upper(lam_hi, bits), ONE)
        cos_lo = sqrt_lower(lam_lo, bits)
        sin_lo = sqrt_lower((ONE - cos_hi) / 2, bits)
        sin_hi = sqrt_upper((ONE - cos_lo) / 2, bits)
        if sin_lo > 0 and sin_lo >= (ONE - DELTA_TOLERANCE / 2) * sin_hi:
            return sin_lo
        bits *= 2
    if sin_lo <= 0:
        raise InvariantViolationError("angle between independent directions could not be separated from zero")
    logger.warning("angle refinement stopped after %d rounds; using the looser bound %s", REFINE_ROUNDS, sin_lo)
    return sin_lo


def compute_delta_bound(base: PointConfig, epsilon: Fraction) -> Fraction:
    """Certified rational lower bound of epsilon * sin(a/2), a the minimal angle."""
    if epsilon <= 0:
        raise PreconditionError("epsilon must be positive")
    best: Optional[Fraction] = None
    for pair in qualifying_pairs(base):
        s = half_angle_sine_lower(base.subset(pair.first), base.subset(pair.second))
        if s is None:
            logger.warning("skipping pair %s/%s with a shared direction", pair.first, pair.second)
            continue
        if best is None or s < best:
            best = s
    if best is None:
        logger.info("no qualifying pair; delta defaults to epsilon/2")
        return epsilon / 2
    return epsilon * best


# ---------------------------------------------------------------------------
# masts
# ---------------------------------------------------------------------------

def _next_power_of_two(x: Fraction) -> Fraction:
    p = ONE
    while p < x:
        p *= 2
    return p


def next_mast_height(previous: Fraction, radius: Fraction, delta: Fraction) -> Fraction:
    """Smallest power of two m >= H + R*H/delta + 1 for previous height H.

    Projecting from (A_1, m) moves any point of height <= H by at most
    R*H/(m - H) < delta against the orthogonal projection.
    """
    return _next_power_of_two(previous + radius * previous / delta + 1)


def compute_mast_heights(base: PointConfig, delta: Fraction) -> Tuple[Fraction, Fraction, Fraction, Fraction]:
    if delta <= 0:
        raise PreconditionError("delta must be positive")
    anchor = base.points[0]
    radius = sqrt_upper(max(squared_norm(vec_sub(p, anchor)) for p in base.points), 16)
    heights = [ONE]
    for _ in range(3):
        heights.append(next_mast_height(heights[-1], radius, delta))
    return tuple(heights)


# ---------------------------------------------------------------------------
# lifted instance and the neighbourhood property
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LiftedInstance:
    k: int
    base: PointConfig
    lifted: PointConfig
    mast_heights: Tuple[Fraction, Fraction, Fraction, Fraction]
    epsilon: Fraction
    delta: Fraction

    @classmethod
    def build(cls, base: PointConfig, k: int, mast_heights: Sequence[Fraction],
              epsilon: Fraction, delta: Fraction) -> "LiftedInstance":
        heights = tuple(Fraction(h) for h in mast_heights)
        if len(heights) != 4 or heights[0] <= 0 or any(a >= b for a, b in zip(heights, heights[1:])):
            raise PreconditionError(f"mast heights must be four increasing positive values, got {heights}")
        if not 0 < delta < epsilon:
            raise PreconditionError("need 0 < delta < epsilon")
        if not is_vertex(base, 0):
            raise PreconditionError("base point 0 must be a vertex of the hull")
        anchor = base.points[0]
        points = [p + (ZERO,) for p in base.points] + [anchor + (h,) for h in heights]
        masts = list(SPECIAL_NAMES[1:])
        if set(masts) & set(base.labels):
            masts = [f"~{name}" for name in masts]
        labels = list(base.labels) + masts
        lifted = PointConfig(base.dim + 1, tuple(points), tuple(labels))
        return cls(k, base, lifted, heights, epsilon, delta)

    @property
    def mast_indices(self) -> Tuple[int, int, int, int]:
        n = len(self.base)
        return n, n + 1, n + 2, n + 3

    @property
    def special_indices(self) -> FrozenSet[int]:
        return frozenset((0,) + self.mast_indices)

    def special_name(self, index: int) -> str:
        if index == 0:
            return SPECIAL_NAMES[0]
        return SPECIAL_NAMES[index - len(self.base) + 1]

    def is_mast(self, index: int) -> bool:
        return index >= len(self.base)


def neighbourhood_check(P1: Sequence[RatVector], P2: Sequence[RatVector], epsilon: Fraction,
                        delta: Fraction, point: RatVector) -> bool:
    """If ``point`` is certifiably within delta of both hulls, it is within epsilon of
    their intersection point.

    Euclidean closeness is certified by n * linf^2 < delta^2. Returns True when
    the hypothesis is not certified.
    """
    n = len(point)
    bound = delta * delta
    for S in (P1, P2):
        d = linf_distance_lower([point], S, S)
        if n * d * d >= bound:
            return True
    x = pair_intersection(P1, P2)
    if x is None:
        raise PreconditionError("the two hulls do not meet")
    return squared_norm(vec_sub(point, x)) < epsilon * epsilon

"""Exact rational scalars, vectors and the small linear algebra kernel.

Scalars are ``fractions.Fraction`` (always in lowest terms with a positive
denominator), vectors are tuples of them. Everything here is pure and works
on immutable values.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import isqrt
from typing import Iterable, List, Optional, Sequence, Tuple, Union

from tverberg_kit.core.errors import InputError

logger = logging.getLogger(__name__)

Rat = Fraction
RatVector = Tuple[Fraction, ...]
Matrix = Sequence[Sequence[Fraction]]
RatLike = Union[Fraction, int, str]

ZERO = Fraction(0)
ONE = Fraction(1)


def as_rat(value: RatLike) -> Fraction:
    """Coerce an int, Fraction or rational string ("-3/7", "2") to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise InputError(f"not a rational value: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"not an exact rational: {value!r}") from exc
    raise InputError(f"not an exact rational: {value!r} (floats are not accepted)")


def as_vector(values: Iterable[RatLike]) -> RatVector:
    return tuple(as_rat(v) for v in values)


def vec_add(a: RatVector, b: RatVector) -> RatVector:
    return tuple(x + y for x, y in zip(a, b))


def vec_sub(a: RatVector, b: RatVector) -> RatVector:
    return tuple(x - y for x, y in zip(a, b))


def vec_scale(a: RatVector, s: Fraction) -> RatVector:
    return tuple(x * s for x in a)


def dot(a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    return sum((x * y for x, y in zip(a, b)), ZERO)


def squared_norm(a: RatVector) -> Fraction:
    return dot(a, a)


def combine(points: Sequence[RatVector], weights: Sequence[Fraction]) -> RatVector:
    """Weighted sum of points (no normalisation)."""
    if not points:
        raise InputError("cannot combine an empty point list")
    dim = len(points[0])
    acc = [ZERO] * dim
    for p, w in zip(points, weights):
        if w:
            for i in range(dim):
                acc[i] += w * p[i]
    return tuple(acc)


def _row_echelon(rows: List[List[Fraction]], ncols: int) -> Tuple[List[List[Fraction]], List[int]]:
    """Reduced row echelon form in place; returns (rows, pivot columns)."""
    pivots: List[int] = []
    r = 0
    for c in range(ncols):
        if r >= len(rows):
            break
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = ONE / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    return rows, pivots


def rank(matrix: Matrix) -> int:
    """Exact rank over the rationals."""
    if not matrix:
        raise InputError("rank of an empty matrix")
    ncols = len(matrix[0])
    if any(len(row) != ncols for row in matrix):
        raise InputError("ragged matrix")
    rows = [[as_rat(x) for x in row] for row in matrix]
    _, pivots = _row_echelon(rows, ncols)
    return len(pivots)


def null_vector(matrix: Matrix) -> Optional[RatVector]:
    """A nonzero kernel vector of ``matrix`` or None when the kernel is trivial.

    The free column with the smallest index is set to 1.
    """
    if not matrix:
        raise InputError("null vector of an empty matrix")
    ncols = len(matrix[0])
    rows = [[as_rat(x) for x in row] for row in matrix]
    rows, pivots = _row_echelon(rows, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    if not free:
        return None
    f = free[0]
    vec = [ZERO] * ncols
    vec[f] = ONE
    for r, c in enumerate(pivots):
        vec[c] = -rows[r][f]
    return tuple(vec)


def solve_exact(matrix: Matrix, rhs: Sequence[Fraction]) -> Optional[RatVector]:
    """Unique solution of ``matrix @ x = rhs``.

    Returns None when the system is inconsistent or has more than one solution.
    """
    if not matrix:
        raise InputError("empty system")
    ncols = len(matrix[0])
    rows = [[as_rat(x) for x in row] + [as_rat(b)] for row, b in zip(matrix, rhs)]
    rows, pivots = _row_echelon(rows, ncols + 1)
    if ncols in pivots or len(pivots) < ncols:
        return None
    x = [ZERO] * ncols
    for r, c in enumerate(pivots):
        x[c] = rows[r][ncols]
    return tuple(x)


def affine_dim(points: Sequence[RatVector]) -> int:
    """Dimension of the affine hull; -1 for the empty set."""
    if not points:
        return -1
    if len(points) == 1:
        return 0
    base = points[0]
    diffs = [vec_sub(p, base) for p in points[1:]]
    return rank(diffs)


def is_affinely_independent(points: Sequence[RatVector]) -> bool:
    return affine_dim(points) == len(points) - 1


@dataclass(frozen=True)
class PointConfig:
    """Labelled finite point set in R^dim. Indices are 0-based and stable."""

    dim: int
    points: Tuple[RatVector, ...]
    labels: Tuple[str, ...] = field(default=())

    def __post_init__(self):
        if not isinstance(self.dim, int) or self.dim < 1:
            raise InputError(f"dimension must be a positive integer, got {self.dim!r}")
        pts = tuple(as_vector(p) for p in self.points)
        for i, p in enumerate(pts):
            if len(p) != self.dim:
                raise InputError(f"point {i} has {len(p)} coordinates, expected {self.dim}")
        labels = tuple(self.labels) if self.labels else tuple(f"P{i}" for i in range(len(pts)))
        if len(labels) != len(pts):
            raise InputError("labels and points differ in length")
        if len(set(labels)) != len(labels):
            raise InputError("labels must be distinct")
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "labels", labels)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[RatLike]], labels: Optional[Sequence[str]] = None,
                  dim: Optional[int] = None) -> "PointConfig":
        rows = [as_vector(r) for r in rows]
        if dim is None:
            if not rows:
                raise InputError("cannot infer the dimension of an empty point set")
            dim = len(rows[0])
        return cls(dim=dim, points=tuple(rows), labels=tuple(labels or ()))

    def __len__(self) -> int:
        return len(self.points)

    def subset(self, indices: Iterable[int]) -> Tuple[RatVector, ...]:
        return tuple(self.points[i] for i in indices)

    def index_of(self, point: RatVector) -> Optional[int]:
        for i, p in enumerate(self.points):
            if p == point:
                return i
        return None

    def replace_point(self, index: int, point: RatVector) -> "PointConfig":
        pts = list(self.points)
        pts[index] = as_vector(point)
        return PointConfig(self.dim, tuple(pts), self.labels)

    def permuted(self, order: Sequence[int]) -> "PointConfig":
        """New config whose point ``i`` is this config's point ``order[i]``."""
        return PointConfig(self.dim, tuple(self.points[j] for j in order),
                           tuple(self.labels[j] for j in order))


@dataclass(frozen=True)
class GeneralPositionReport:
    ok: bool
    violator: Optional[Tuple[int, ...]] = None

    def __bool__(self) -> bool:
        return self.ok


def is_general_position(config: PointConfig) -> GeneralPositionReport:
    """No k points in a (k-2)-dimensional affine subspace for any k <= dim+1.

    Subsets are scanned by increasing size, each size in lexicographic index
    order, so the reported violator is the smallest one.
    """
    n = len(config)
    for k in range(2, min(config.dim + 1, n) + 1):
        for combo in combinations(range(n), k):
            if affine_dim(config.subset(combo)) != k - 1:
                logger.debug("general position violated by %s", combo)
                return GeneralPositionReport(False, combo)
    return GeneralPositionReport(True)


def canonical_order(config: PointConfig) -> Tuple[PointConfig, Tuple[int, ...]]:
    """Sort points lexicographically; returns the sorted config and the order used."""
    order = tuple(sorted(range(len(config)), key=lambda i: (config.points[i], i)))
    return config.permuted(order), order


def sqrt_lower(q: Fraction, bits: int = 32) -> Fraction:
    """Rational lower bound of sqrt(q) with denominator 2**bits."""
    if q < 0:
        raise InputError("square root of a negative rational")
    scale = 1 << bits
    return Fraction(isqrt(q.numerator * scale * scale // q.denominator), scale)


def sqrt_upper(q: Fraction, bits: int = 32) -> Fraction:
    """Rational upper bound of sqrt(q) with denominator 2**bits."""
    if q < 0:
        raise InputError("square root of a negative rational")
    scale = 1 << bits
    t = -(-q.numerator * scale * scale // q.denominator)
    s = isqrt(t)
    if s * s < t:
        s += 1
    return Fraction(s, scale)

"""Exact two-phase simplex over the rationals.

Every convexity question in the toolkit is answered here. Pricing follows
Bland's rule (smallest improving column, ratio ties broken by the smallest
basic column), which terminates over exact arithmetic. Equality rows are kept
as equalities; free variables are split into two nonnegative columns.

Outcomes carry checkable evidence: an optimal point, a Farkas vector for
infeasibility, or a feasible point plus a recession ray for unboundedness.
``verify_outcome`` re-checks any outcome by substitution alone.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from tverberg_kit.core.errors import InputError, InvariantViolationError
from tverberg_kit.core.rational import ONE, ZERO, RatVector, as_vector, dot


class LPStatus(str, Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LinearProgram:
    """minimize c.x subject to A_eq x = b_eq, A_le x <= b_le, x_i >= 0 where masked."""

    num_vars: int
    objective: RatVector = ()
    A_eq: Tuple[RatVector, ...] = ()
    b_eq: RatVector = ()
    A_le: Tuple[RatVector, ...] = ()
    b_le: RatVector = ()
    nonneg_mask: Tuple[bool, ...] = ()

    def __post_init__(self):
        n = self.num_vars
        if not isinstance(n, int) or n < 1:
            raise InputError(f"num_vars must be a positive integer, got {n!r}")
        objective = as_vector(self.objective) if self.objective else (ZERO,) * n
        if len(objective) != n:
            raise InputError(f"objective has {len(objective)} entries, expected {n}")
        A_eq = tuple(as_vector(row) for row in self.A_eq)
        A_le = tuple(as_vector(row) for row in self.A_le)
        b_eq, b_le = as_vector(self.b_eq), as_vector(self.b_le)
        if len(A_eq) != len(b_eq):
            raise InputError("A_eq and b_eq differ in row count")
        if len(A_le) != len(b_le):
            raise InputError("A_le and b_le differ in row count")
        for row in A_eq + A_le:
            if len(row) != n:
                raise InputError(f"constraint row has {len(row)} entries, expected {n}")
        mask = tuple(bool(m) for m in self.nonneg_mask) if self.nonneg_mask else (True,) * n
        if len(mask) != n:
            raise InputError("nonneg_mask length differs from num_vars")
        object.__setattr__(self, "objective", objective)
        object.__setattr__(self, "A_eq", A_eq)
        object.__setattr__(self, "b_eq", b_eq)
        object.__setattr__(self, "A_le", A_le)
        object.__setattr__(self, "b_le", b_le)
        object.__setattr__(self, "nonneg_mask", mask)


@dataclass(frozen=True)
class LPOutcome:
    status: LPStatus
    solution: Optional[RatVector] = None
    value: Optional[Fraction] = None
    infeasibility_certificate: Optional[RatVector] = None
    ray: Optional[RatVector] = field(default=None)


class _Tableau:
    """Dense standard-form tableau: rows @ cols = rhs, cols >= 0."""

    def __init__(self, lp: LinearProgram):
        self.lp = lp
        # (variable, sign) per structural column
        self.col_map: List[Tuple[int, int]] = []
        for j in range(lp.num_vars):
            self.col_map.append((j, 1))
            if not lp.nonneg_mask[j]:
                self.col_map.append((j, -1))
        n_struct = len(self.col_map)
        m_eq, m_le = len(lp.A_eq), len(lp.A_le)
        self.m = m_eq + m_le
        self.n_struct = n_struct

        rows: List[List[Fraction]] = []
        rhs: List[Fraction] = []
        self.row_sign: List[int] = []
        slack_of_row: List[Optional[int]] = []
        for r in range(self.m):
            src = lp.A_eq[r] if r < m_eq else lp.A_le[r - m_eq]
            b = lp.b_eq[r] if r < m_eq else lp.b_le[r - m_eq]
            row = [src[j] * s for j, s in self.col_map] + [ZERO] * m_le
            if r >= m_eq:
                slack = n_struct + (r - m_eq)
                row[slack] = ONE
                slack_of_row.append(slack)
            else:
                slack_of_row.append(None)
            sign = -1 if b < 0 else 1
            if sign < 0:
                row = [-x for x in row]
                b = -b
            rows.append(row)
            rhs.append(b)
            self.row_sign.append(sign)

        self.n_art_start = n_struct + m_le
        self.basis: List[int] = []
        self.init_col: List[int] = []
        n_art = 0
        for r in range(self.m):
            slack = slack_of_row[r]
            if slack is not None and self.row_sign[r] > 0:
                self.basis.append(slack)
                self.init_col.append(slack)
            else:
                col = self.n_art_start + n_art
                n_art += 1
                self.basis.append(col)
                self.init_col.append(col)
        self.ncols = self.n_art_start + n_art
        for r in range(self.m):
            rows[r].extend([ZERO] * n_art)
            if self.basis[r] >= self.n_art_start:
                rows[r][self.basis[r]] = ONE
        self.rows = rows
        self.rhs = rhs
        self.n_art = n_art
        self.rc: List[Fraction] = []
        self.obj = ZERO

    def is_artificial(self, col: int) -> bool:
        return col >= self.n_art_start

    def price(self, cost: Sequence[Fraction]) -> None:
        rc = list(cost)
        obj = ZERO
        for r in range(self.m):
            cb = cost[self.basis[r]]
            if cb:
                row = self.rows[r]
                for k in range(self.ncols):
                    if row[k]:
                        rc[k] -= cb * row[k]
                obj += cb * self.rhs[r]
        self.rc = rc
        self.obj = obj

    def pivot(self, i: int, j: int) -> None:
        row = self.rows[i]
        piv = row[j]
        if piv != ONE:
            row = [x / piv for x in row]
            self.rows[i] = row
            self.rhs[i] = self.rhs[i] / piv
        nz = [k for k in range(self.ncols) if row[k]]
        rhs_i = self.rhs[i]
        for r in range(self.m):
            if r == i:
                continue
            f = self.rows[r][j]
            if f:
                target = self.rows[r]
                for k in nz:
                    target[k] -= f * row[k]
                self.rhs[r] -= f * rhs_i
        f = self.rc[j] if self.rc else ZERO
        if f:
            for k in nz:
                self.rc[k] -= f * row[k]
            self.obj += f * rhs_i
        self.basis[i] = j

    def run(self, allow_artificial: bool) -> Optional[int]:
        """Iterate to optimality. Returns the entering column when unbounded."""
        limit = self.ncols if allow_artificial else self.n_art_start
        while True:
            entering = next((k for k in range(limit) if self.rc[k] < 0), None)
            if entering is None:
                return None
            leave = None
            best = None
            for r in range(self.m):
                a = self.rows[r][entering]
                if a > 0:
                    ratio = self.rhs[r] / a
                    if (best is None or ratio < best
                            or (ratio == best and self.basis[r] < self.basis[leave])):
                        best, leave = ratio, r
            if leave is None:
                return entering
            self.pivot(leave, entering)

    def column_values(self) -> List[Fraction]:
        vals = [ZERO] * self.ncols
        for r, col in enumerate(self.basis):
            vals[col] = self.rhs[r]
        return vals

    def to_variables(self, col_values: Sequence[Fraction]) -> RatVector:
        x = [ZERO] * self.lp.num_vars
        for col, (var, sign) in enumerate(self.col_map):
            v = col_values[col]
            if v:
                x[var] += v if sign > 0 else -v
        return tuple(x)


def _farkas_from_phase_one(tab: _Tableau, cost: Sequence[Fraction]) -> RatVector:
    y = []
    for r in range(tab.m):
        col = tab.init_col[r]
        pi = cost[col] - tab.rc[col]
        y.append(-pi * tab.row_sign[r])
    return tuple(y)


def solve(lp: LinearProgram) -> LPOutcome:
    """Solve ``lp`` exactly; the returned evidence always passes verify_outcome."""
    tab = _Tableau(lp)

    if tab.n_art:
        phase1 = [ZERO] * tab.ncols
        for k in range(tab.n_art_start, tab.ncols):
            phase1[k] = ONE
        tab.price(phase1)
        if tab.run(allow_artificial=True) is not None:
            raise InvariantViolationError("phase one cannot be unbounded")
        if tab.obj > 0:
            outcome = LPOutcome(LPStatus.INFEASIBLE,
                                infeasibility_certificate=_farkas_from_phase_one(tab, phase1))
            return _checked(lp, outcome)
        for r in range(tab.m):
            if tab.is_artificial(tab.basis[r]):
                j = next((k for k in range(tab.n_art_start) if tab.rows[r][k] != 0), None)
                if j is not None:
                    tab.pivot(r, j)

    phase2 = [ZERO] * tab.ncols
    for col, (var, sign) in enumerate(tab.col_map):
        phase2[col] = lp.objective[var] * sign
    tab.price(phase2)
    entering = tab.run(allow_artificial=False)
    vals = tab.column_values()
    x = tab.to_variables(vals)
    if entering is not None:
        direction = [ZERO] * tab.ncols
        direction[entering] = ONE
        for r, col in enumerate(tab.basis):
            direction[col] -= tab.rows[r][entering]
        ray = tab.to_variables(direction)
        return _checked(lp, LPOutcome(LPStatus.UNBOUNDED, solution=x, ray=ray))
    return _checked(lp, LPOutcome(LPStatus.OPTIMAL, solution=x, value=dot(lp.objective, x)))


def _checked(lp: LinearProgram, outcome: LPOutcome) -> LPOutcome:
    if not verify_outcome(lp, outcome):
        raise InvariantViolationError(f"simplex produced an unverifiable {outcome.status.value} outcome")
    return outcome


def is_feasible_point(lp: LinearProgram, x: Sequence[Fraction]) -> bool:
    if len(x) != lp.num_vars:
        return False
    for row, b in zip(lp.A_eq, lp.b_eq):
        if dot(row, x) != b:
            return False
    for row, b in zip(lp.A_le, lp.b_le):
        if dot(row, x) > b:
            return False
    return all(v >= 0 for v, m in zip(x, lp.nonneg_mask) if m)


def check_certificate(lp: LinearProgram, y: Sequence[Fraction]) -> bool:
    """Farkas check: y = (y_eq, y_le) with y_le >= 0, g = y^T A >= 0 on nonneg
    variables and = 0 on free ones, and y^T b < 0."""
    m_eq = len(lp.A_eq)
    if len(y) != m_eq + len(lp.A_le):
        return False
    if any(v < 0 for v in y[m_eq:]):
        return False
    rows = lp.A_eq + lp.A_le
    g = [ZERO] * lp.num_vars
    for yr, row in zip(y, rows):
        if yr:
            for j in range(lp.num_vars):
                g[j] += yr * row[j]
    for gj, nonneg in zip(g, lp.nonneg_mask):
        if (nonneg and gj < 0) or (not nonneg and gj != 0):
            return False
    return dot(y, lp.b_eq + lp.b_le) < 0


def verify_outcome(lp: LinearProgram, out: LPOutcome) -> bool:
    """Re-check an outcome by direct substitution; never trusts the solver."""
    if out.status == LPStatus.OPTIMAL:
        return (out.solution is not None and out.value is not None
                and is_feasible_point(lp, out.solution)
                and dot(lp.objective, out.solution) == out.value)
    if out.status == LPStatus.INFEASIBLE:
        return out.infeasibility_certificate is not None and check_certificate(lp, out.infeasibility_certificate)
    if out.status == LPStatus.UNBOUNDED:
        d = out.ray
        if out.solution is None or d is None or len(d) != lp.num_vars:
            return False
        if not is_feasible_point(lp, out.solution):
            return False
        if any(dot(row, d) != 0 for row in lp.A_eq):
            return False
        if any(dot(row, d) > 0 for row in lp.A_le):
            return False
        if any(v < 0 for v, m in zip(d, lp.nonneg_mask) if m):
            return False
        return dot(lp.objective, d) < 0
    return False

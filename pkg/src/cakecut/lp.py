"""Exact linear programming over rationals.

The solver is a two-phase primal simplex with fraction-free integer pivoting
(Edmonds-style): the tableau holds integers T with a shared positive
denominator `den`, the true entry being T[i][j]/den. Each pivot keeps entries
integral (divisions are exact subdeterminant cancellations) and Bland's rule
makes the pivot sequence deterministic and cycle-free.

Every variable carries finite lower/upper bounds, so the feasible region is a
bounded polytope and unboundedness is impossible on valid input; hitting it
raises LpInternalError.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Optional

ZERO = Fraction(0)

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"


class LpInternalError(RuntimeError):
    """Unbounded ray or non-convergence on a supposedly bounded polytope."""


@dataclass(frozen=True)
class LinearProgram:
    """maximize objective . x + shift  subject to  rows and box bounds.

    rows: tuple of (coefficients, rhs) encoding coefficients . x <= rhs.
    lower/upper: finite per-variable bounds (the box).
    """

    n_vars: int
    objective: tuple
    shift: Fraction
    rows: tuple
    lower: tuple
    upper: tuple


@dataclass(frozen=True)
class LpResult:
    status: str
    value: Optional[Fraction] = None
    point: Optional[tuple] = None


def _scale_row(coeffs, rhs):
    mult = lcm(*(c.denominator for c in coeffs), rhs.denominator) if coeffs else rhs.denominator
    return [int(c * mult) for c in coeffs], int(rhs * mult)


def solve_lp(lp: LinearProgram) -> LpResult:
    n = lp.n_vars
    if n == 0:
        for coeffs, rhs in lp.rows:
            if rhs < 0:
                return LpResult(INFEASIBLE)
        return LpResult(OPTIMAL, lp.shift, ())

    # Shift to y = x - lower >= 0; append the box uppers as ordinary rows.
    spans = [hi - lo for lo, hi in zip(lp.lower, lp.upper)]
    if any(s < 0 for s in spans):
        return LpResult(INFEASIBLE)
    rows = []
    for coeffs, rhs in lp.rows:
        shifted = rhs - sum((c * lo for c, lo in zip(coeffs, lp.lower)), ZERO)
        rows.append(_scale_row(list(coeffs), shifted))
    for k in range(n):
        unit = [ZERO] * n
        unit[k] = Fraction(1)
        rows.append(_scale_row(unit, spans[k]))

    obj_mult = lcm(*(c.denominator for c in lp.objective)) if lp.objective else 1
    obj_int = [int(c * obj_mult) for c in lp.objective]

    solved = _simplex(n, rows, obj_int)
    if solved is None:
        return LpResult(INFEASIBLE)
    val_scaled, y = solved
    x = tuple(yk + lo for yk, lo in zip(y, lp.lower))
    value = (
        Fraction(val_scaled) / obj_mult
        + sum((c * lo for c, lo in zip(lp.objective, lp.lower)), ZERO)
        + lp.shift
    )
    return LpResult(OPTIMAL, value, x)


def _simplex(n, rows, objective):
    """Core integer-pivot simplex on  max objective.y, A y <= b, y >= 0.

    rows are integer (coeffs, rhs) pairs. Returns (value as Fraction scaled by
    the objective's integer scaling, point) or None when infeasible.
    """
    m = len(rows)
    nart = sum(1 for _, b in rows if b < 0)
    ncols = n + m + nart
    RHS = ncols
    T = []
    basis = []
    art_cols = set()
    ai = 0
    for i, (a, b) in enumerate(rows):
        row = list(a) + [0] * (m + nart) + [b]
        row[n + i] = 1
        if b < 0:
            row = [-v for v in row]
            row[n + m + ai] = 1
            basis.append(n + m + ai)
            art_cols.add(n + m + ai)
            ai += 1
        else:
            basis.append(n + i)
        T.append(row)

    # z-rows: entry j holds (c_B B^-1 A_j - c_j) scaled by den; rhs holds the
    # objective value scaled by den. Entering columns are those with entry < 0.
    zreal = [0] * (ncols + 1)
    for j in range(n):
        zreal[j] = -objective[j]
    zrows = [zreal]
    if nart:
        zart = [0] * (ncols + 1)
        for i in range(m):
            if basis[i] in art_cols:
                for j in range(ncols + 1):
                    zart[j] -= T[i][j]
        for c in art_cols:
            zart[c] = 0
        zrows.append(zart)

    state = {"den": 1}

    def pivot(r, c):
        den = state["den"]
        prow = T[r]
        p = prow[c]
        for row in T:
            if row is prow:
                continue
            f = row[c]
            if f == 0:
                if den != p:
                    for j in range(ncols + 1):
                        row[j] = row[j] * p // den
                continue
            for j in range(ncols + 1):
                num = row[j] * p - f * prow[j]
                q, rem = divmod(num, den)
                if rem:
                    raise LpInternalError("fraction-free pivot lost integrality")
                row[j] = q
        for row in zrows:
            f = row[c]
            if f == 0:
                if den != p:
                    for j in range(ncols + 1):
                        row[j] = row[j] * p // den
                continue
            for j in range(ncols + 1):
                num = row[j] * p - f * prow[j]
                q, rem = divmod(num, den)
                if rem:
                    raise LpInternalError("fraction-free pivot lost integrality")
                row[j] = q
        state["den"] = p
        basis[r] = c

    def run(zrow, allowed):
        guard = 0
        limit = 8000 + 200 * (m + n)
        while True:
            guard += 1
            if guard > limit:
                raise LpInternalError("simplex did not converge (cycling?)")
            enter = -1
            for j in allowed:
                if zrow[j] < 0:
                    enter = j
                    break
            if enter < 0:
                return True
            leave = -1
            br = ba = None
            for i in range(m):
                a = T[i][enter]
                if a > 0:
                    r_ = T[i][RHS]
                    if (
                        leave < 0
                        or r_ * ba < br * a
                        or (r_ * ba == br * a and basis[i] < basis[leave])
                    ):
                        leave, br, ba = i, r_, a
            if leave < 0:
                return False
            pivot(leave, enter)

    allowed = [j for j in range(ncols) if j not in art_cols]
    if nart:
        if not run(zrows[1], allowed):
            raise LpInternalError("phase-1 unbounded: impossible for feasibility LP")
        if zrows[1][RHS] != 0:
            return None
        # Degenerate basic artificials: pivot them out where possible; an
        # all-zero row is redundant and can stay (its rhs is zero for good).
        for i in range(m):
            if basis[i] in art_cols:
                piv = -1
                for j in allowed:
                    if T[i][j] != 0:
                        piv = j
                        break
                if piv >= 0:
                    if T[i][piv] < 0:
                        T[i] = [-v for v in T[i]]
                    pivot(i, piv)
    if not run(zrows[0], allowed):
        raise LpInternalError("unbounded objective on a boxed polytope")

    den = state["den"]
    y = [ZERO] * n
    for i in range(m):
        if basis[i] < n:
            y[basis[i]] = Fraction(T[i][RHS], den)
    return Fraction(zrows[0][RHS], den), tuple(y)


def check_feasible(lp: LinearProgram, point) -> bool:
    """Exact feasibility test of a point against rows and box (for audits)."""
    if len(point) != lp.n_vars:
        return False
    for x, lo, hi in zip(point, lp.lower, lp.upper):
        if not (lo <= x <= hi):
            return False
    for coeffs, rhs in lp.rows:
        if sum((c * x for c, x in zip(coeffs, point)), ZERO) > rhs:
            return False
    return True


def evaluate_objective(lp: LinearProgram, point) -> Fraction:
    return sum((c * x for c, x in zip(lp.objective, point)), ZERO) + lp.shift

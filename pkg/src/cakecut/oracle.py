"""Independent brute-force oracle over a finite cut grid.

Enumerates divisions whose piece endpoints lie on the grid
{cell boundaries} union {j/resolution}, keeps the best envy-free one, and so
lower-bounds the exact optimum. The scan is a depth-first walk over positions
(left to right) assigning a player and a grid piece at each step; it shares
no code with the LP solver.

All pruning is lossless, so the result equals the full enumeration's:

* an envy violation among already-placed pieces can never be repaired
  (pieces never change once placed), and each feasibility quantity is
  monotone in the candidate right endpoint, so windows come from bisection;
* an unplaced player who already prefers a placed piece to the whole
  remaining suffix can never be satisfied;
* at the last position, the objective is monotone in the last player's own
  value, so only the dominating endpoint of the feasible window matters;
* a branch whose exact objective upper bound cannot strictly beat the
  incumbent cannot change the result (ties keep the earlier witness).

Values are compared as integers over one common denominator; everything is
exact.
"""

from __future__ import annotations

from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from fractions import Fraction
from math import factorial, lcm
from typing import Optional

from .model import Division, Instance, Interval, refine
from .solver import BudgetExceeded, Mode, SolverOptions

ZERO = Fraction(0)

ORACLE_COST_PER_NODE = 1e-6

BIG = 10 ** 30


class NoGridDivision(RuntimeError):
    """No envy-free division exists with all endpoints on the grid."""


@dataclass(frozen=True)
class OracleResult:
    value: Fraction
    witness: Division


def grid_points(instance: Instance, resolution: int):
    pts = set(refine(instance).cells)
    for j in range(resolution + 1):
        pts.add(Fraction(j, resolution))
    return sorted(pts)


def grid_oracle(instance: Instance, options: SolverOptions, resolution: int) -> OracleResult:
    """Best envy-free division with all endpoints on the grid.

    Deterministic: candidates are scanned player-ascending, left endpoint
    ascending, right endpoint descending; the incumbent is replaced only on
    strict improvement.
    """
    if resolution < 1:
        raise ValueError("resolution must be >= 1")
    n = instance.n
    grid = grid_points(instance, resolution)
    G = len(grid)
    last_g = G - 1

    if options.time_budget is not None:
        weight = factorial(n) * G * G
        estimate = weight * ORACLE_COST_PER_NODE
        if estimate > options.time_budget:
            raise BudgetExceeded(weight, estimate, options.time_budget)

    # Integer prefix tables: P[i][g] = denom * v_i((0, grid[g])).
    prefix_frac = [[v.prefix(x) for x in grid] for v in instance.players]
    denom = 1
    for row in prefix_frac:
        for x in row:
            denom = lcm(denom, x.denominator)
    P = [[int(x * denom) for x in row] for row in prefix_frac]
    total = [row[-1] for row in P]

    objective = options.objective
    kind = objective.kind
    if kind == "custom":
        wdenom = lcm(*(w.denominator for w in objective.weights))
        weights = [int(w * wdenom) for w in objective.weights]
        value_scale = denom * wdenom
    else:
        weights = None
        value_scale = denom
    if kind == "single" and not (0 <= objective.player < n):
        raise ValueError("single-player objective index out of range")

    complete = options.mode is Mode.COMPLETE

    best_val: Optional[int] = None
    best_assign = None

    placed = []  # (player, a, b, own)
    maxseen = [0] * n  # per player, best value among placed pieces
    used = [False] * n

    def node_bound(g, cur_sum, cur_min):
        if kind == "utilitarian":
            acc = cur_sum
            for u in range(n):
                if not used[u]:
                    acc += total[u] - P[u][g]
            return acc
        if kind == "egalitarian":
            worst = cur_min
            for u in range(n):
                if not used[u]:
                    s = total[u] - P[u][g]
                    if s < worst:
                        worst = s
            return worst
        if kind == "single":
            q = objective.player
            return cur_sum if used[q] else cur_sum + total[q] - P[q][g]
        acc = cur_sum
        for u in range(n):
            if not used[u] and weights[u] > 0:
                acc += weights[u] * (total[u] - P[u][g])
        return acc

    def objective_add(cur_sum, cur_min, player, own):
        if kind == "egalitarian":
            return cur_sum, own if own < cur_min else cur_min
        if kind == "utilitarian":
            return cur_sum + own, cur_min
        if kind == "single":
            if player == objective.player:
                return cur_sum + own, cur_min
            return cur_sum, cur_min
        return cur_sum + weights[player] * own, cur_min

    def finish(cur_sum, cur_min):
        return cur_min if kind == "egalitarian" else cur_sum

    def b_window(q, a):
        """Feasible right-endpoint window [lo, hi] for player q's piece (a, .)."""
        Pq = P[q]
        lo = bisect_left(Pq, maxseen[q] + Pq[a], a, G)
        if lo > last_g:
            return 1, 0
        hi = last_g
        for (qp, ap, bp, ownp) in placed:
            cap = ownp + P[qp][a]
            h = bisect_right(P[qp], cap, a, G) - 1
            if h < hi:
                hi = h
                if hi < lo:
                    return 1, 0
        for u in range(n):
            if used[u] or u == q:
                continue
            Pu = P[u]
            h = bisect_right(Pu, Pu[-1] - maxseen[u], a, G) - 1
            if h < hi:
                hi = h
                if hi < lo:
                    return 1, 0
            # last b with 2*Pu[b] <= Pu[-1] + Pu[a]
            cap2 = Pu[-1] + Pu[a]
            lo2, hi2 = a, hi
            while lo2 <= hi2:
                mid = (lo2 + hi2) // 2
                if 2 * Pu[mid] <= cap2:
                    lo2 = mid + 1
                else:
                    hi2 = mid - 1
            if hi2 < hi:
                hi = hi2
                if hi < lo:
                    return 1, 0
        return lo, hi

    def last_candidate_b(q, lo, hi):
        """Dominating right endpoint at the final position."""
        if kind == "custom" and weights[q] < 0:
            return lo
        return hi

    def rec(pos, g, cur_sum, cur_min):
        nonlocal best_val, best_assign
        if best_val is not None and node_bound(g, cur_sum, cur_min) <= best_val:
            return
        last = pos == n - 1
        for q in range(n):
            if used[q]:
                continue
            Pq = P[q]
            a_candidates = (g,) if complete else range(g, G)
            for a in a_candidates:
                if best_val is not None and node_bound(a, cur_sum, cur_min) <= best_val:
                    break
                lo, hi = b_window(q, a)
                if hi < lo:
                    continue
                if last:
                    if complete:
                        if not (lo <= last_g <= hi):
                            continue
                        b = last_g
                    else:
                        b = last_candidate_b(q, lo, hi)
                    own = Pq[b] - Pq[a]
                    s, mn = objective_add(cur_sum, cur_min, q, own)
                    val = finish(s, mn)
                    if best_val is None or val > best_val:
                        best_val = val
                        best_assign = tuple(
                            [(qq, aa, bb) for (qq, aa, bb, _) in placed] + [(q, a, b)]
                        )
                    continue
                # q counts as placed for every bound inside the b loop
                used[q] = True
                for b in range(hi, lo - 1, -1):
                    own = Pq[b] - Pq[a]
                    s, mn = objective_add(cur_sum, cur_min, q, own)
                    if best_val is not None and node_bound(b, s, mn) <= best_val:
                        continue
                    saved = maxseen.copy()
                    for u in range(n):
                        if u != q:
                            seen = P[u][b] - P[u][a]
                            if seen > maxseen[u]:
                                maxseen[u] = seen
                    placed.append((q, a, b, own))
                    rec(pos + 1, b, s, mn)
                    placed.pop()
                    maxseen[:] = saved
                used[q] = False

    rec(0, 0, 0, BIG)

    if best_assign is None:
        raise NoGridDivision(
            f"no envy-free {options.mode.value} division with endpoints on the "
            f"{G}-point grid"
        )

    pieces = [None] * n
    for q, a, b in best_assign:
        pieces[q] = Interval(grid[a], grid[b])
    return OracleResult(value=Fraction(best_val, value_scale), witness=Division(tuple(pieces)))

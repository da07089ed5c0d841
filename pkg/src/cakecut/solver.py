"""Exact optimization of welfare over envy-free connected divisions.

The search space is organized by configurations: a player ordering plus an
assignment of every cut variable to a cell of the common breakpoint
refinement. Within one configuration every player's value for every piece is
affine in the cut variables, so each configuration is an exact LP; the global
optimum is the maximum over all configurations.

Enumeration order is lexicographic (orderings outer, cell assignments inner)
and the incumbent is replaced only on strict improvement, so the reported
witness is the lexicographically least optimal configuration. Configurations
are skipped only when a cheap upper bound proves they cannot strictly beat
the incumbent, which cannot change the reported result.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement, permutations
from typing import Optional

from .lp import OPTIMAL, LinearProgram, solve_lp
from .metrics import WelfareKind, utilities
from .model import Division, Instance, Interval, refine

ZERO = Fraction(0)
ONE = Fraction(1)

# Coarse per-configuration cost model for upfront budget estimates (seconds).
COST_PER_CONFIGURATION = 2e-4

# Safety margin for float-based pruning; double-precision errors in the bound
# arithmetic stay many orders of magnitude below this.
PRUNE_MARGIN = 1e-9


class BudgetExceeded(RuntimeError):
    def __init__(self, configurations: int, estimate_seconds: float, budget_seconds: float):
        self.configurations = configurations
        self.estimate_seconds = estimate_seconds
        self.budget_seconds = budget_seconds
        count = (
            f"{configurations}" if configurations < 10 ** 9 else f"{float(configurations):.2e}"
        ) if configurations < 10 ** 300 else "more than 1e300"
        super().__init__(
            f"estimated {count} configurations "
            f"(~{estimate_seconds:.3g}s) exceed the budget of {budget_seconds:.0f}s"
        )


class NoEnvyFreeDivision(RuntimeError):
    """Every configuration infeasible: impossible for valid instances."""


class Mode(enum.Enum):
    COMPLETE = "complete"
    PARTIAL = "partial"


@dataclass(frozen=True)
class Objective:
    kind: str  # "utilitarian" | "egalitarian" | "single" | "custom"
    player: Optional[int] = None
    weights: Optional[tuple] = None

    @staticmethod
    def utilitarian() -> "Objective":
        return Objective("utilitarian")

    @staticmethod
    def egalitarian() -> "Objective":
        return Objective("egalitarian")

    @staticmethod
    def single_player(player: int) -> "Objective":
        return Objective("single", player=player)

    @staticmethod
    def custom(weights) -> "Objective":
        return Objective("custom", weights=tuple(Fraction(w) for w in weights))

    @staticmethod
    def for_welfare(kind: WelfareKind) -> "Objective":
        if kind is WelfareKind.UTILITARIAN:
            return Objective.utilitarian()
        return Objective.egalitarian()


@dataclass(frozen=True)
class SolverOptions:
    mode: Mode
    objective: Objective
    ordering_filter: Optional[tuple] = None
    time_budget: Optional[float] = None
    workers: int = 1


@dataclass(frozen=True)
class Configuration:
    ordering: tuple  # ordering[p] = player occupying position p
    cut_cells: tuple  # non-decreasing cell index per cut variable


@dataclass(frozen=True)
class SolveResult:
    status: str
    value: Fraction
    witness: Division
    config: Configuration


@dataclass(frozen=True)
class DumpingReport:
    kind: WelfareKind
    complete: SolveResult
    partial: SolveResult
    ratio: Optional[Fraction]  # None iff the complete optimum is zero
    infinite: bool

    @property
    def alpha(self) -> Optional[Fraction]:
        return self.ratio


@dataclass(frozen=True)
class ParetoImprovement:
    found: bool
    delta: Fraction
    witness: Optional[Division]


class _Context:
    """Per-instance tables making configuration LPs cheap to assemble.

    z: cell boundaries. F[i][b]: prefix value of player i at boundary b.
    dens[i][c]: density of player i on cell c. G[i][c] = F[i][c] - dens*z[c],
    so that player i's prefix at a point x inside cell c is G[i][c] + dens*x.
    """

    def __init__(self, instance: Instance, mode: Mode):
        self.instance = instance
        self.mode = mode
        self.n = instance.n
        part = refine(instance)
        self.z = part.cells
        self.m = part.n_cells
        self.F = []
        self.dens = []
        self.G = []
        for v in instance.players:
            Fi = tuple(v.prefix(b) for b in self.z)
            Di = tuple(
                (Fi[c + 1] - Fi[c]) / (self.z[c + 1] - self.z[c]) for c in range(self.m)
            )
            Gi = tuple(Fi[c] - Di[c] * self.z[c] for c in range(self.m))
            self.F.append(Fi)
            self.dens.append(Di)
            self.G.append(Gi)
        self.Ff = [[float(x) for x in Fi] for Fi in self.F]
        self.n_vars = (self.n - 1) if mode is Mode.COMPLETE else 2 * self.n

    # -- endpoints ---------------------------------------------------------
    # an endpoint is ("const", boundary_index) or ("var", variable_index)

    def piece_endpoints(self, p: int):
        if self.mode is Mode.COMPLETE:
            left = ("const", 0) if p == 0 else ("var", p - 1)
            right = ("const", self.m) if p == self.n - 1 else ("var", p)
            return left, right
        return ("var", 2 * p), ("var", 2 * p + 1)

    def span_boundaries(self, p: int, cells):
        """Widest possible span of position p's piece, as boundary indices."""
        left, right = self.piece_endpoints(p)
        lo = left[1] if left[0] == "const" else cells[left[1]]
        hi = right[1] if right[0] == "const" else cells[right[1]] + 1
        return lo, hi

    def value_form(self, i: int, p: int, cells, n_total_vars: int):
        """Affine form of v_i(piece at position p): (coeffs list, const)."""
        coeffs = [ZERO] * n_total_vars
        const = ZERO
        left, right = self.piece_endpoints(p)
        kind, idx = right
        if kind == "const":
            const += self.F[i][idx]
        else:
            c = cells[idx]
            const += self.G[i][c]
            coeffs[idx] += self.dens[i][c]
        kind, idx = left
        if kind == "const":
            const -= self.F[i][idx]
        else:
            c = cells[idx]
            const -= self.G[i][c]
            coeffs[idx] -= self.dens[i][c]
        return coeffs, const


def _build_lp(
    ctx: _Context,
    ordering,
    cells,
    objective: Objective,
    envy_free: bool = True,
    pareto_targets=None,
) -> LinearProgram:
    n = ctx.n
    V = ctx.n_vars
    needs_aux = objective.kind == "egalitarian" or pareto_targets is not None
    total = V + (1 if needs_aux else 0)
    aux = V if needs_aux else None

    pos_of = [0] * n
    for p, player in enumerate(ordering):
        pos_of[player] = p

    forms = [ctx.value_form(i, pos_of[i], cells, total) for i in range(n)]

    rows = []
    for k in range(V - 1):
        r = [ZERO] * total
        r[k], r[k + 1] = ONE, -ONE
        rows.append((tuple(r), ZERO))
    if envy_free:
        for i in range(n):
            ci, di = forms[i]
            for j in range(n):
                if j == i:
                    continue
                cj, dj = ctx.value_form(i, pos_of[j], cells, total)
                rows.append(
                    (tuple(a - b for a, b in zip(cj, ci)), di - dj)
                )
    if pareto_targets is not None:
        # delta + target_i <= v_i(own piece)
        for i in range(n):
            ci, di = forms[i]
            r = [-a for a in ci]
            r[aux] += ONE
            rows.append((tuple(r), di - pareto_targets[i]))
        obj = [ZERO] * total
        obj[aux] = ONE
        shift = ZERO
    elif objective.kind == "utilitarian":
        obj = [ZERO] * total
        shift = ZERO
        for i in range(n):
            ci, di = forms[i]
            for k in range(total):
                obj[k] += ci[k]
            shift += di
    elif objective.kind == "egalitarian":
        for i in range(n):
            ci, di = forms[i]
            r = [-a for a in ci]
            r[aux] += ONE
            rows.append((tuple(r), di))
        obj = [ZERO] * total
        obj[aux] = ONE
        shift = ZERO
    elif objective.kind == "single":
        ci, di = forms[objective.player]
        obj = list(ci)
        shift = di
    elif objective.kind == "custom":
        obj = [ZERO] * total
        shift = ZERO
        for i, w in enumerate(objective.weights):
            ci, di = forms[i]
            for k in range(total):
                obj[k] += w * ci[k]
            shift += w * di
    else:
        raise ValueError(f"unknown objective kind {objective.kind!r}")

    lower = [ctx.z[cells[k]] for k in range(V)]
    upper = [ctx.z[cells[k] + 1] for k in range(V)]
    if needs_aux:
        lower.append(Fraction(-2))
        upper.append(Fraction(2))
    return LinearProgram(
        n_vars=total,
        objective=tuple(obj),
        shift=shift,
        rows=tuple(rows),
        lower=tuple(lower),
        upper=tuple(upper),
    )


def build_lp(instance: Instance, config: Configuration, options: SolverOptions) -> LinearProgram:
    """Public LP assembly for one configuration (for inspection and tests)."""
    ctx = _Context(instance, options.mode)
    return _build_lp(ctx, config.ordering, config.cut_cells, options.objective)


def _witness_from_point(ctx: _Context, ordering, point) -> Division:
    V = ctx.n_vars
    cuts = point[:V]
    pieces = [None] * ctx.n
    if ctx.mode is Mode.COMPLETE:
        bounds = [ZERO] + list(cuts) + [ONE]
        for p, player in enumerate(ordering):
            pieces[player] = Interval(bounds[p], bounds[p + 1])
    else:
        for p, player in enumerate(ordering):
            pieces[player] = Interval(cuts[2 * p], cuts[2 * p + 1])
    return Division(tuple(pieces))


def _orderings_for(instance: Instance, options: SolverOptions):
    if options.ordering_filter is not None:
        perms = sorted(set(tuple(p) for p in options.ordering_filter))
        for p in perms:
            if sorted(p) != list(range(instance.n)):
                raise ValueError(f"ordering filter entry {p} is not a permutation")
        return perms
    return list(permutations(range(instance.n)))


def _ordering_count(instance: Instance, options: SolverOptions) -> int:
    if options.ordering_filter is not None:
        return len(set(tuple(p) for p in options.ordering_filter))
    return math.factorial(instance.n)


def count_configurations(instance: Instance, options: SolverOptions) -> int:
    ctx_vars = instance.n - 1 if options.mode is Mode.COMPLETE else 2 * instance.n
    m = refine(instance).n_cells
    per_ordering = math.comb(m + ctx_vars - 1, ctx_vars) if ctx_vars else 1
    return _ordering_count(instance, options) * per_ordering


def enumerate_configurations(instance: Instance, options: SolverOptions):
    """All (ordering, monotone cell assignment) pairs, lexicographically."""
    _check_budget(instance, options)
    m = refine(instance).n_cells
    V = instance.n - 1 if options.mode is Mode.COMPLETE else 2 * instance.n
    for ordering in _orderings_for(instance, options):
        for cells in combinations_with_replacement(range(m), V):
            yield Configuration(tuple(ordering), cells)


def _check_budget(instance: Instance, options: SolverOptions):
    if options.time_budget is None:
        return
    count = count_configurations(instance, options)
    # integer comparison first: the count can dwarf float range
    if count > int(options.time_budget / COST_PER_CONFIGURATION):
        estimate = count * COST_PER_CONFIGURATION if count < 10 ** 300 else math.inf
        raise BudgetExceeded(count, estimate, options.time_budget)


def _bound_fn(ctx: _Context, objective: Objective, pareto_targets):
    """Returns f(ordering, cells) -> float upper bound on the LP optimum.

    Bounds ignore envy and piece disjointness: each position's piece is
    allowed its widest possible span. Computed in floats; callers must keep
    the PRUNE_MARGIN slack.
    """
    Ff = ctx.Ff
    n = ctx.n
    span = ctx.span_boundaries
    if pareto_targets is not None:
        tf = [float(t) for t in pareto_targets]

        def bound(ordering, cells):
            worst = math.inf
            for p in range(n):
                lo, hi = span(p, cells)
                i = ordering[p]
                v = Ff[i][hi] - Ff[i][lo] - tf[i]
                if v < worst:
                    worst = v
            return worst

        return bound
    if objective.kind == "utilitarian":

        def bound(ordering, cells):
            acc = 0.0
            for p in range(n):
                lo, hi = span(p, cells)
                i = ordering[p]
                acc += Ff[i][hi] - Ff[i][lo]
            return acc

        return bound
    if objective.kind == "egalitarian":

        def bound(ordering, cells):
            worst = math.inf
            for p in range(n):
                lo, hi = span(p, cells)
                i = ordering[p]
                v = Ff[i][hi] - Ff[i][lo]
                if v < worst:
                    worst = v
            return worst

        return bound
    if objective.kind == "single":
        q = objective.player

        def bound(ordering, cells):
            p = ordering.index(q)
            lo, hi = span(p, cells)
            return Ff[q][hi] - Ff[q][lo]

        return bound
    if objective.kind == "custom":
        wf = [float(w) for w in objective.weights]

        def bound(ordering, cells):
            acc = 0.0
            for p in range(n):
                i = ordering[p]
                w = wf[i]
                if w > 0:
                    lo, hi = span(p, cells)
                    acc += w * (Ff[i][hi] - Ff[i][lo])
            return acc

        return bound
    raise ValueError(f"unknown objective kind {objective.kind!r}")


def _scan(
    ctx: _Context,
    orderings,
    objective: Objective,
    envy_free: bool,
    pareto_targets,
    floor: Optional[Fraction],
):
    """Best (value, ordering, cells, point) over the given orderings.

    `floor` is an exact pruning threshold: configurations that cannot exceed
    it are skipped and results must exceed it to count.
    """
    m = ctx.m
    V = ctx.n_vars
    bound = _bound_fn(ctx, objective, pareto_targets)
    best = None
    best_value = floor
    best_float = -math.inf if floor is None else float(floor)
    for ordering in orderings:
        ordering = tuple(ordering)
        for cells in combinations_with_replacement(range(m), V):
            if bound(ordering, cells) <= best_float - PRUNE_MARGIN:
                continue
            lp = _build_lp(ctx, ordering, cells, objective, envy_free, pareto_targets)
            res = solve_lp(lp)
            if res.status != OPTIMAL:
                continue
            if best_value is None or res.value > best_value:
                best = (res.value, ordering, cells, res.point)
                best_value = res.value
                best_float = float(res.value)
    return best


def _scan_worker(args):
    instance, mode, orderings, objective, envy_free, pareto_targets, floor = args
    ctx = _Context(instance, mode)
    return _scan(ctx, orderings, objective, envy_free, pareto_targets, floor)


def _search(
    instance: Instance,
    options: SolverOptions,
    objective: Objective,
    envy_free: bool = True,
    pareto_targets=None,
    floor: Optional[Fraction] = None,
):
    _check_budget(instance, options)
    ctx = _Context(instance, options.mode)
    orderings = _orderings_for(instance, options)
    if options.workers > 1 and len(orderings) > 1:
        from concurrent.futures import ProcessPoolExecutor

        chunks = [
            orderings[i :: options.workers] for i in range(options.workers)
        ]
        # preserve lexicographic priority: chunk c holds orderings c, c+w, ...
        args = [
            (instance, options.mode, chunk, objective, envy_free, pareto_targets, floor)
            for chunk in chunks
            if chunk
        ]
        with ProcessPoolExecutor(max_workers=options.workers) as pool:
            results = list(pool.map(_scan_worker, args))
        best = None
        for res in results:
            if res is None:
                continue
            if best is None or res[0] > best[0]:
                best = res
            elif res[0] == best[0]:
                # deterministic tie-break: lexicographically least ordering, cells
                if (res[1], res[2]) < (best[1], best[2]):
                    best = res
        return ctx, best
    return ctx, _scan(ctx, orderings, objective, envy_free, pareto_targets, floor)


def optimize(instance: Instance, options: SolverOptions) -> SolveResult:
    """Global maximum of the objective over envy-free divisions of the mode.

    Partial mode subsumes complete (gaps may have zero width), so the partial
    optimum is always >= the complete optimum.
    """
    ctx, best = _search(instance, options, options.objective)
    if best is None:
        raise NoEnvyFreeDivision(
            "no configuration was feasible; envy-free divisions always exist"
        )
    value, ordering, cells, point = best
    witness = _witness_from_point(ctx, ordering, point)
    return SolveResult(
        status="optimal",
        value=value,
        witness=witness,
        config=Configuration(ordering, tuple(cells)),
    )


def max_player_utility_ef(
    instance: Instance,
    player: int,
    mode: Mode,
    time_budget: Optional[float] = None,
    workers: int = 1,
) -> Fraction:
    """Maximum utility of one player over all envy-free divisions of the mode."""
    options = SolverOptions(
        mode=mode,
        objective=Objective.single_player(player),
        time_budget=time_budget,
        workers=workers,
    )
    return optimize(instance, options).value


def dumping_report(
    instance: Instance,
    kind: WelfareKind,
    time_budget: Optional[float] = None,
    workers: int = 1,
) -> DumpingReport:
    """Optimal complete and partial welfare and their ratio alpha."""
    objective = Objective.for_welfare(kind)
    complete = optimize(
        instance,
        SolverOptions(Mode.COMPLETE, objective, time_budget=time_budget, workers=workers),
    )
    partial = optimize(
        instance,
        SolverOptions(Mode.PARTIAL, objective, time_budget=time_budget, workers=workers),
    )
    if complete.value == 0:
        return DumpingReport(kind, complete, partial, None, infinite=partial.value > 0)
    return DumpingReport(kind, complete, partial, partial.value / complete.value, False)


def exists_strict_pareto_improvement(
    instance: Instance,
    division: Division,
    time_budget: Optional[float] = None,
    workers: int = 1,
) -> ParetoImprovement:
    """Search for any division strictly better for every player.

    Maximizes the worst per-player improvement delta over all partial-mode
    configurations (envy-freeness not required); an improvement exists iff
    the optimum delta is positive.
    """
    targets = utilities(instance, division)
    options = SolverOptions(
        Mode.PARTIAL,
        Objective.utilitarian(),  # placeholder; the delta objective is used
        time_budget=time_budget,
        workers=workers,
    )
    ctx, best = _search(
        instance,
        options,
        options.objective,
        envy_free=False,
        pareto_targets=targets,
        floor=ZERO,
    )
    if best is None:
        return ParetoImprovement(found=False, delta=ZERO, witness=None)
    value, ordering, cells, point = best
    witness = _witness_from_point(ctx, ordering, point)
    return ParetoImprovement(found=True, delta=value, witness=witness)

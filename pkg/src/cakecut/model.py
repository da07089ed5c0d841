"""Cake, valuations, divisions.

The cake is the unit interval [0,1]. Each player carries a piecewise-constant
density, stored as cell masses between consecutive breakpoints; every measure
is nonatomic, so open and closed intervals are interchangeable and all pieces
are treated as open intervals. Everything is an exact Fraction and immutable.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

ZERO = Fraction(0)
ONE = Fraction(1)


class NotNormalized(ValueError):
    """Total mass of a valuation differs from 1."""

    def __init__(self, total: Fraction, where: str = ""):
        self.total = Fraction(total)
        message = f"cell masses sum to {self.total}, expected 1"
        super().__init__(f"{where}: {message}" if where else message)


class OverlappingSegments(ValueError):
    """Input segments of a valuation overlap."""


class OverlappingPieces(ValueError):
    """Division pieces overlap as open intervals."""


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    return Fraction(x)


@dataclass(frozen=True, order=True)
class Interval:
    """Open interval (left, right) inside [0,1]; left == right is the empty piece."""

    left: Fraction
    right: Fraction

    def __post_init__(self):
        object.__setattr__(self, "left", _as_fraction(self.left))
        object.__setattr__(self, "right", _as_fraction(self.right))
        if not (ZERO <= self.left <= self.right <= ONE):
            raise ValueError(f"interval ({self.left}, {self.right}) not ordered inside [0,1]")

    @property
    def empty(self) -> bool:
        return self.left == self.right

    @property
    def width(self) -> Fraction:
        return self.right - self.left


@dataclass(frozen=True)
class Valuation:
    """Piecewise-constant probability density on [0,1].

    breakpoints: strictly increasing Fractions from 0 to 1.
    cell_masses: one non-negative mass per cell, summing to exactly 1.
    """

    breakpoints: tuple
    cell_masses: tuple

    def __post_init__(self):
        bps = tuple(_as_fraction(b) for b in self.breakpoints)
        masses = tuple(_as_fraction(m) for m in self.cell_masses)
        if len(bps) < 2 or bps[0] != ZERO or bps[-1] != ONE:
            raise ValueError("breakpoints must run from 0 to 1")
        if any(b >= c for b, c in zip(bps, bps[1:])):
            raise ValueError("breakpoints must be strictly increasing")
        if len(masses) != len(bps) - 1:
            raise ValueError("need exactly one mass per cell")
        if any(m < 0 for m in masses):
            raise ValueError("cell masses must be non-negative")
        total = sum(masses)
        if total != ONE:
            raise NotNormalized(total)
        # canonical form: runs of adjacent zero-mass cells collapse into one,
        # so equal measures compare equal and serialization round-trips
        cbps, cmasses = [bps[0]], []
        for c, m in enumerate(masses):
            if m == 0 and cmasses and cmasses[-1] == 0:
                cbps[-1] = bps[c + 1]
            else:
                cbps.append(bps[c + 1])
                cmasses.append(m)
        object.__setattr__(self, "breakpoints", tuple(cbps))
        object.__setattr__(self, "cell_masses", tuple(cmasses))
        acc, cum = ZERO, [ZERO]
        for m in cmasses:
            acc += m
            cum.append(acc)
        object.__setattr__(self, "_cumulative", tuple(cum))

    def density(self, cell: int) -> Fraction:
        return self.cell_masses[cell] / (self.breakpoints[cell + 1] - self.breakpoints[cell])

    def prefix(self, x: Fraction) -> Fraction:
        """Mass of (0, x)."""
        x = _as_fraction(x)
        if x <= ZERO:
            return ZERO
        if x >= ONE:
            return ONE
        # cell index such that breakpoints[i] <= x < breakpoints[i+1]
        i = bisect_right(self.breakpoints, x) - 1
        return self._cumulative[i] + self.density(i) * (x - self.breakpoints[i])

    def segments(self):
        """Non-zero-mass cells as (left, right, mass) triples."""
        out = []
        for i, m in enumerate(self.cell_masses):
            if m != 0:
                out.append((self.breakpoints[i], self.breakpoints[i + 1], m))
        return out


def value_of(valuation: Valuation, interval: Interval) -> Fraction:
    """Exact measure of an interval: integral of the step density over it."""
    if interval.empty:
        return ZERO
    return valuation.prefix(interval.right) - valuation.prefix(interval.left)


def uniform_valuation() -> Valuation:
    return Valuation((ZERO, ONE), (ONE,))


def make_valuation(segments: Iterable[tuple]) -> Valuation:
    """Build a valuation from sparse (left, right, mass) segments.

    Segments must be pairwise disjoint and lie in [0,1]; gaps become
    zero-mass cells so the density is defined everywhere. Masses must sum
    to exactly 1.
    """
    segs = []
    for left, right, mass in segments:
        left, right, mass = _as_fraction(left), _as_fraction(right), _as_fraction(mass)
        if not (ZERO <= left <= right <= ONE):
            raise ValueError(f"segment ({left}, {right}) outside [0,1]")
        if mass < 0:
            raise ValueError(f"segment mass {mass} negative")
        if left == right:
            if mass != 0:
                raise ValueError("zero-width segment cannot carry mass (measures are nonatomic)")
            continue
        segs.append((left, right, mass))
    segs.sort()
    for (l1, r1, _), (l2, r2, _) in zip(segs, segs[1:]):
        if l2 < r1:
            raise OverlappingSegments(f"segments ({l1},{r1}) and ({l2},{r2}) overlap")
    total = sum((m for _, _, m in segs), ZERO)
    if total != ONE:
        raise NotNormalized(total)

    breakpoints = [ZERO]
    masses = []
    cursor = ZERO
    for left, right, mass in segs:
        if left > cursor:
            breakpoints.append(left)
            masses.append(ZERO)
        breakpoints.append(right)
        masses.append(mass)
        cursor = right
    if cursor < ONE:
        breakpoints.append(ONE)
        masses.append(ZERO)
    return Valuation(tuple(breakpoints), tuple(masses))


@dataclass(frozen=True)
class Instance:
    """An ordered list of players with exact valuations."""

    players: tuple
    label: str = ""
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        players = tuple(self.players)
        object.__setattr__(self, "players", players)
        if len(players) < 1:
            raise ValueError("an instance needs at least one player")
        object.__setattr__(self, "params", dict(self.params))

    @property
    def n(self) -> int:
        return len(self.players)


@dataclass(frozen=True)
class CellPartition:
    """Sorted union of all players' breakpoints; every density is constant per cell."""

    cells: tuple

    @property
    def boundaries(self) -> tuple:
        return self.cells

    @property
    def n_cells(self) -> int:
        return len(self.cells) - 1

    def span(self, cell: int) -> tuple:
        return self.cells[cell], self.cells[cell + 1]


def refine(instance: Instance) -> CellPartition:
    """Common refinement of every player's breakpoints."""
    pts = set()
    for v in instance.players:
        pts.update(v.breakpoints)
    return CellPartition(tuple(sorted(pts)))


@dataclass(frozen=True)
class Division:
    """One open interval per player (player i owns pieces[i]); empty pieces allowed."""

    pieces: tuple

    def __post_init__(self):
        object.__setattr__(self, "pieces", tuple(self.pieces))
        for p in self.pieces:
            if not isinstance(p, Interval):
                raise TypeError("pieces must be Interval objects")

    @property
    def n(self) -> int:
        return len(self.pieces)


@dataclass(frozen=True)
class Classification:
    complete: bool
    leftovers: tuple  # maximal unallocated intervals, left to right

    @property
    def partial(self) -> bool:
        return not self.complete


def classify(division: Division) -> Classification:
    """Complete iff the closed pieces cover [0,1]; otherwise list the leftovers.

    Raises OverlappingPieces when two non-empty pieces overlap as open sets.
    """
    occupied = sorted(
        (p for p in division.pieces if not p.empty), key=lambda p: (p.left, p.right)
    )
    for a, b in zip(occupied, occupied[1:]):
        if b.left < a.right:
            raise OverlappingPieces(
                f"pieces ({a.left},{a.right}) and ({b.left},{b.right}) overlap"
            )
    leftovers = []
    cursor = ZERO
    for p in occupied:
        if p.left > cursor:
            leftovers.append(Interval(cursor, p.left))
        cursor = p.right
    if cursor < ONE:
        leftovers.append(Interval(cursor, ONE))
    return Classification(complete=not leftovers, leftovers=tuple(leftovers))

"""Envy, welfare, Pareto relations, leftover absorption."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from .model import Division, Instance, Interval, classify, value_of

ZERO = Fraction(0)


class SizeMismatch(ValueError):
    """Division has a different number of pieces than the instance has players."""


class NoAllocatedPiece(ValueError):
    """Leftover absorption needs at least one non-empty piece."""


class WelfareKind(enum.Enum):
    UTILITARIAN = "utilitarian"
    EGALITARIAN = "egalitarian"


@dataclass(frozen=True)
class WelfareValue:
    kind: WelfareKind
    value: Fraction


@dataclass(frozen=True)
class EnvyMatrix:
    """entries[i][j] = value player i assigns to player j's piece."""

    entries: tuple

    @property
    def n(self) -> int:
        return len(self.entries)

    def diagonal(self) -> tuple:
        return tuple(self.entries[i][i] for i in range(self.n))


def envy_matrix(instance: Instance, division: Division) -> EnvyMatrix:
    if division.n != instance.n:
        raise SizeMismatch(f"{division.n} pieces for {instance.n} players")
    rows = tuple(
        tuple(value_of(v, piece) for piece in division.pieces) for v in instance.players
    )
    return EnvyMatrix(rows)


def is_envy_free(matrix: EnvyMatrix):
    """True iff every diagonal entry is a maximum of its row.

    On failure also returns the lexicographically least envious pair (i, j),
    meaning player i strictly prefers player j's piece.
    """
    for i, row in enumerate(matrix.entries):
        own = row[i]
        for j, v in enumerate(row):
            if v > own:
                return False, (i, j)
    return True, None


def utilities(instance: Instance, division: Division) -> tuple:
    if division.n != instance.n:
        raise SizeMismatch(f"{division.n} pieces for {instance.n} players")
    return tuple(value_of(v, p) for v, p in zip(instance.players, division.pieces))


def welfare(instance: Instance, division: Division, kind: WelfareKind) -> WelfareValue:
    us = utilities(instance, division)
    if kind is WelfareKind.UTILITARIAN:
        return WelfareValue(kind, sum(us, ZERO))
    return WelfareValue(kind, min(us))


def pareto_dominates(instance: Instance, x: Division, y: Division, strict: bool) -> bool:
    """Weak mode: x is at least as good for everyone and better for someone.

    Strict mode: x is strictly better for every player.
    """
    ux = utilities(instance, x)
    uy = utilities(instance, y)
    if strict:
        return all(a > b for a, b in zip(ux, uy))
    return all(a >= b for a, b in zip(ux, uy)) and any(a > b for a, b in zip(ux, uy))


def absorb_leftover(instance: Instance, division: Division) -> Division:
    """Merge every maximal leftover interval into an adjacent allocated piece.

    The left neighbour wins ties (a leftover with pieces on both sides goes
    left); a leftover at the very start of the cake, having no left
    neighbour, goes to the piece on its right. The result is complete and
    every player's utility weakly increases.
    """
    if division.n != instance.n:
        raise SizeMismatch(f"{division.n} pieces for {instance.n} players")
    cls = classify(division)
    if cls.complete:
        return division
    bounds = {i: [p.left, p.right] for i, p in enumerate(division.pieces) if not p.empty}
    if not bounds:
        raise NoAllocatedPiece("cannot absorb leftovers: all pieces are empty")
    order = sorted(bounds, key=lambda i: bounds[i][0])
    for gap in cls.leftovers:
        left_owner = None
        right_owner = None
        for i in order:
            if bounds[i][1] == gap.left:
                left_owner = i
            if bounds[i][0] == gap.right:
                right_owner = i
        if left_owner is not None:
            bounds[left_owner][1] = gap.right
        else:
            bounds[right_owner][0] = gap.left
    pieces = list(division.pieces)
    for i, (lo, hi) in bounds.items():
        pieces[i] = Interval(lo, hi)
    return Division(tuple(pieces))

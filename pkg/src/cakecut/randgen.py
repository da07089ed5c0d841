"""Seeded random instances and divisions for property suites."""

from __future__ import annotations

import random
from fractions import Fraction

from .model import Division, Instance, Interval, Valuation

ZERO = Fraction(0)
ONE = Fraction(1)


def random_instance(
    seed: int,
    n: int = None,
    max_cells: int = 4,
    denom: int = 8,
    max_weight: int = 4,
) -> Instance:
    """Random instance on a shared breakpoint grid of multiples of 1/denom.

    Players get independent random cell masses (normalized integer weights),
    re-drawn a few times to avoid duplicate valuations, which keep instances
    interesting for envy computations.
    """
    rng = random.Random(seed)
    if n is None:
        n = rng.choice((2, 3))
    cells = rng.randint(1, max_cells)
    interior = sorted(rng.sample(range(1, denom), cells - 1)) if cells > 1 else []
    bps = (ZERO, *(Fraction(j, denom) for j in interior), ONE)

    def draw():
        weights = [rng.randint(0, max_weight) for _ in range(cells)]
        if not any(weights):
            weights[rng.randrange(cells)] = 1
        total = sum(weights)
        return Valuation(bps, tuple(Fraction(w, total) for w in weights))

    players = []
    for _ in range(n):
        v = draw()
        for _ in range(4):
            if v not in players:
                break
            v = draw()
        players.append(v)
    return Instance(tuple(players), label=f"random-{seed}", params={})


def random_partial_division(seed: int, n: int, denom: int = 16) -> Division:
    """Random valid division: 2n sorted grid points, random player order."""
    rng = random.Random(seed)
    points = sorted(Fraction(rng.randint(0, denom), denom) for _ in range(2 * n))
    order = list(range(n))
    rng.shuffle(order)
    pieces = [None] * n
    for p, player in enumerate(order):
        pieces[player] = Interval(points[2 * p], points[2 * p + 1])
    return Division(tuple(pieces))


def random_complete_division(seed: int, n: int, denom: int = 16) -> Division:
    rng = random.Random(seed)
    cuts = sorted(Fraction(rng.randint(0, denom), denom) for _ in range(n - 1))
    bounds = [ZERO] + cuts + [ONE]
    order = list(range(n))
    rng.shuffle(order)
    pieces = [None] * n
    for p, player in enumerate(order):
        pieces[player] = Interval(bounds[p], bounds[p + 1])
    return Division(tuple(pieces))

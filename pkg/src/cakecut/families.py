"""Deterministic generators for the benchmark instance families.

Each generator returns a ConstructionBundle: the instance, a canonical
complete and a canonical partial division, and exact predicted welfare
values for those divisions. Valued intervals whose physical widths are not
forced by the construction are packed left to right on an equal-width slot
grid with zero-density filler between them; the relevant properties depend
only on interval ordering and masses, never on the widths.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .metrics import absorb_leftover
from .model import Division, Instance, Interval, make_valuation, uniform_valuation

ZERO = Fraction(0)
ONE = Fraction(1)
HALF = Fraction(1, 2)


class ParamOutOfRange(ValueError):
    """Construction parameter violates its precondition."""


class UnknownTag(KeyError):
    """No prediction stored under the requested (division, welfare) tag."""


@dataclass(frozen=True)
class ConstructionBundle:
    instance: Instance
    canonical_complete: Optional[Division]
    canonical_partial: Division
    predicted: dict  # (tag, kind) -> Fraction, tag in {"complete", "partial"}
    notes: str = ""


def predicted_value(bundle: ConstructionBundle, division_tag: str, welfare_kind: str) -> Fraction:
    key = (division_tag, welfare_kind)
    if key not in bundle.predicted:
        raise UnknownTag(f"no prediction stored for {key}")
    return bundle.predicted[key]


def _require(cond: bool, message: str):
    if not cond:
        raise ParamOutOfRange(message)


def _pack(lo: Fraction, hi: Fraction, count: int, width: Optional[Fraction]):
    """`count` equal-width slots in [lo, hi]: interval j starts at lo + j*pitch."""
    pitch = (hi - lo) / count
    w = width if width is not None else pitch / 2
    _require(ZERO < w < pitch, f"width must lie in (0, {pitch})")
    return [(lo + j * pitch, lo + j * pitch + w) for j in range(count)], w


# ---------------------------------------------------------------------------
# two players, candy strip in the middle
# ---------------------------------------------------------------------------

def intro_two_player(
    eps: Fraction = Fraction(1, 50), candy_width: Fraction = Fraction(1, 100)
) -> ConstructionBundle:
    eps, candy_width = Fraction(eps), Fraction(candy_width)
    _require(ZERO < candy_width < eps < Fraction(1, 4), "need 0 < candy_width < eps < 1/4")
    strip = (HALF - candy_width / 2, HALF + candy_width / 2)
    alice = uniform_valuation()
    bob = make_valuation([(strip[0], strip[1], ONE)])
    instance = Instance(
        (alice, bob),
        label="intro-two-player",
        params={"eps": eps, "candy_width": candy_width},
    )
    complete = Division((Interval(ZERO, HALF), Interval(HALF, ONE)))
    partial = Division((Interval(ZERO, strip[0]), Interval(strip[0], ONE - eps)))
    predicted = {
        ("complete", "utilitarian"): ONE,
        ("complete", "egalitarian"): HALF,
        ("partial", "utilitarian"): Fraction(3, 2) - candy_width / 2,
        ("partial", "egalitarian"): HALF - candy_width / 2,
    }
    notes = (
        "Uniform player plus a candy-strip player. Cutting at 1/2 is the only "
        "envy-free complete division; discarding a right-end sliver lets the "
        "strip go entirely to the second player."
    )
    return ConstructionBundle(instance, complete, partial, predicted, notes)


# ---------------------------------------------------------------------------
# utilitarian family: n = 2k(3t-2) players, dumping ~sqrt(n)
# ---------------------------------------------------------------------------

def utilitarian_family(k: int, t: int, width: Optional[Fraction] = None) -> ConstructionBundle:
    _require(k >= 1, "need k >= 1")
    _require(t >= 2, "need t >= 2")
    n = 2 * k * (3 * t - 2)
    nF = Fraction(n)
    n_special = k * (3 * t - 2)
    n_common = n - n_special

    # player indices: per set s, pair j: A0, A1, B at base+3j..base+3j+2,
    # the chosen player at base+3t-3; common players fill the upper half.
    def a0(s, j):
        return s * (3 * t - 2) + 3 * j

    def a1(s, j):
        return s * (3 * t - 2) + 3 * j + 1

    def bp(s, j):
        return s * (3 * t - 2) + 3 * j + 2

    def chosen(s):
        return s * (3 * t - 2) + 3 * t - 3

    # interval layout in [1/2, 1]: high-values part then compensation part
    hv_seq = []  # (owner_role, s, j_or_index)
    for s in range(k):
        hv_seq.append(("C", s, 0))
        for j in range(t - 1):
            hv_seq.append(("A0", s, j))
            hv_seq.append(("A1", s, j))
            hv_seq.append(("C", s, j + 1))
    comp_seq = []
    for s in range(k):
        for j in range(t - 1):
            comp_seq.extend(
                [
                    ("A0c1", s, j),
                    ("Bb1", s, j),
                    ("A0c2", s, j),
                    ("Bb2", s, j),
                    ("A1c3", s, j),
                    ("Bb3", s, j),
                    ("A1c4", s, j),
                ]
            )
    seq = hv_seq + comp_seq
    slots, _w = _pack(HALF, ONE, len(seq), Fraction(width) if width is not None else None)
    loc = {key: slot for key, slot in zip(seq, slots)}

    segs = {i: [] for i in range(n)}
    for s in range(k):
        for idx in range(t):
            l, r = loc[("C", s, idx)]
            segs[chosen(s)].append((l, r, Fraction(1, t)))
        for j in range(t - 1):
            l, r = loc[("A0", s, j)]
            segs[a0(s, j)].append((l, r, 4 / nF))
            l, r = loc[("A1", s, j)]
            segs[a1(s, j)].append((l, r, 4 / nF))
            for key, owner, mass in [
                (("A0c1", s, j), a0(s, j), 2 / nF),
                (("A0c2", s, j), a0(s, j), 2 / nF),
                (("A1c3", s, j), a1(s, j), 2 / nF),
                (("A1c4", s, j), a1(s, j), 2 / nF),
                (("Bb1", s, j), bp(s, j), 3 / (2 * nF)),
                (("Bb2", s, j), bp(s, j), 1 / nF),
                (("Bb3", s, j), bp(s, j), 3 / (2 * nF)),
            ]:
                l, r = loc[key]
                segs[owner].append((l, r, mass))
            segs[a0(s, j)].append(None)  # placeholder: common-part remainder
            segs[a1(s, j)].append(None)
            segs[bp(s, j)].append(None)

    players = []
    for i in range(n):
        if i >= n_special:
            players.append(make_valuation([(ZERO, HALF, ONE)]))
            continue
        plain = [s for s in segs[i] if s is not None]
        rest = ONE - sum((m for _, _, m in plain), ZERO)
        if rest:
            plain.append((ZERO, HALF, rest))
        players.append(make_valuation(plain))

    instance = Instance(
        tuple(players),
        label=f"utilitarian-family-k{k}-t{t}",
        params={"k": Fraction(k), "t": Fraction(t), "n": nF, "width": _w},
    )

    # canonical complete: equal common shares, first chosen interval, single
    # high-values interval per A player, one piece over all three B intervals;
    # orphan intervals merge into the nearest piece on the left.
    pieces = [None] * n
    share = HALF / n_common
    for c in range(n_common):
        pieces[n_special + c] = Interval(c * share, (c + 1) * share)
    for s in range(k):
        l, r = loc[("C", s, 0)]
        pieces[chosen(s)] = Interval(l, r)
        for j in range(t - 1):
            pieces[a0(s, j)] = Interval(*loc[("A0", s, j)])
            pieces[a1(s, j)] = Interval(*loc[("A1", s, j)])
            pieces[bp(s, j)] = Interval(loc[("Bb1", s, j)][0], loc[("Bb3", s, j)][1])
    complete = absorb_leftover(instance, Division(tuple(pieces)))

    # canonical partial: discard each B player's middle interval; chosen
    # players span their whole high-values stretch; A players take their two
    # compensation intervals; B and common players split the common part by
    # equal physical size.
    pieces = [None] * n
    sharers = sorted([bp(s, j) for s in range(k) for j in range(t - 1)]) + [
        n_special + c for c in range(n_common)
    ]
    q = len(sharers)
    shareq = HALF / q
    for idx, player in enumerate(sharers):
        pieces[player] = Interval(idx * shareq, (idx + 1) * shareq)
    comp_start = loc[comp_seq[0]][0]
    for s in range(k):
        start = HALF if s == 0 else loc[("C", s, 0)][0]
        end = loc[("C", s + 1, 0)][0] if s + 1 < k else comp_start
        pieces[chosen(s)] = Interval(start, end)
    flat_pairs = [(s, j) for s in range(k) for j in range(t - 1)]
    for pi, (s, j) in enumerate(flat_pairs):
        pieces[a0(s, j)] = Interval(loc[("A0c1", s, j)][0], loc[("A0c2", s, j)][1])
        if pi + 1 < len(flat_pairs):
            nxt = flat_pairs[pi + 1]
            right = loc[("A0c1", nxt[0], nxt[1])][0]
        else:
            right = ONE
        pieces[a1(s, j)] = Interval(loc[("A1c3", s, j)][0], right)
    partial = Division(tuple(pieces))

    kF, tF = Fraction(k), Fraction(t)
    predicted = {
        ("complete", "utilitarian"): (1 / tF + 12 * (tF - 1) / nF) * kF + 1,
        ("partial", "utilitarian"): kF
        + 1
        + (8 * (tF - 1) * kF / nF) * (1 - 1 / (nF + 2 * kF * (tF - 1))),
    }
    notes = (
        f"{n} players: {n_common} common, and {k} sets of {2*(t-1)} type-A, "
        f"{t-1} type-B and one chosen player. The partial division discards "
        f"the {k*(t-1)} middle compensation intervals; its envy-freeness "
        f"requires k >= 8 (type-B players are exactly indifferent at k = 8)."
    )
    return ConstructionBundle(instance, complete, partial, predicted, notes)


# ---------------------------------------------------------------------------
# egalitarian family: n = 3k+1 players, dumping ~n/3
# ---------------------------------------------------------------------------

def egalitarian_family(
    k: int, eps: Fraction = Fraction(1, 100), width: Optional[Fraction] = None
) -> ConstructionBundle:
    eps = Fraction(eps)
    _require(k >= 1, "need k >= 1")
    _require(ZERO < eps < Fraction(1, 12), "need 0 < eps < 1/12")
    n = 3 * k + 1
    nF = Fraction(n)
    last = n - 1
    width = Fraction(width) if width is not None else None

    # main part [0, 3/4]: per group j the sequence
    #   [N][a0][g][a0]  I_j  [N][a1][g][a1]  [g trailing]
    main_seq = []
    for j in range(k):
        main_seq += [
            ("N1", j), ("a0x", j), ("g1", j), ("a0y", j),
            ("I", j),
            ("N2", j), ("a1x", j), ("g2", j), ("a1y", j),
            ("T", j),
        ]
    main_slots, _w1 = _pack(ZERO, Fraction(3, 4), len(main_seq), width)
    mloc = {key: slot for key, slot in zip(main_seq, main_slots)}

    # last-player part [3/4, 1]: [N] then per group [a0][a1][N]
    last_seq = [("LN", 0)]
    for j in range(k):
        last_seq += [("La0", j), ("La1", j), ("LN", j + 1)]
    last_slots, _w2 = _pack(Fraction(3, 4), ONE, len(last_seq), width)
    lloc = {key: slot for key, slot in zip(last_seq, last_slots)}

    quarter_plus = (ONE + eps) / 4
    third_minus = (ONE - eps) / 3
    half_minus = (ONE - eps) / 2

    segs = {i: [] for i in range(n)}
    for j in range(k):
        A0, A1, g = 3 * j, 3 * j + 1, 3 * j + 2
        segs[last].append((*mloc[("N1", j)], 1 / nF))
        segs[last].append((*mloc[("N2", j)], 1 / nF))
        segs[A0].append((*mloc[("a0x", j)], quarter_plus))
        segs[A0].append((*mloc[("a0y", j)], quarter_plus))
        segs[A0].append((*lloc[("La0", j)], half_minus))
        segs[A1].append((*mloc[("a1x", j)], quarter_plus))
        segs[A1].append((*mloc[("a1y", j)], quarter_plus))
        segs[A1].append((*lloc[("La1", j)], half_minus))
        segs[g].append((*mloc[("g1", j)], third_minus))
        segs[g].append((*mloc[("I", j)], eps))
        segs[g].append((*mloc[("g2", j)], third_minus))
        segs[g].append((*mloc[("T", j)], third_minus))
    for j in range(k + 1):
        segs[last].append((*lloc[("LN", j)], 1 / nF))

    players = [make_valuation(segs[i]) for i in range(n)]
    instance = Instance(
        tuple(players),
        label=f"egalitarian-family-k{k}",
        params={"k": Fraction(k), "eps": eps, "n": nF},
    )

    # canonical partial: discard every I_j; each a-player takes a whole
    # block, each g-player her trailing interval, the last player the whole
    # last-player part.
    pieces = [None] * n
    for j in range(k):
        A0, A1, g = 3 * j, 3 * j + 1, 3 * j + 2
        # the previous group's trailing piece ends where this group begins
        group_start = mloc[("N1", j)][0] if j > 0 else ZERO
        pieces[A0] = Interval(group_start, mloc[("I", j)][0])
        pieces[A1] = Interval(mloc[("I", j)][1], mloc[("T", j)][0])
        end = mloc[("N1", j + 1)][0] if j + 1 < k else Fraction(3, 4)
        pieces[g] = Interval(mloc[("T", j)][0], end)
    pieces[last] = Interval(Fraction(3, 4), ONE)
    partial = Division(tuple(pieces))

    complete = None
    predicted = {("partial", "egalitarian"): third_minus}
    if k == 1:
        # hand-built envy-free complete division (egalitarian value 1/4):
        # every piece is worth exactly 1/4 to the last player.
        pieces = [None] * n
        pieces[0] = Interval(ZERO, mloc[("I", 0)][0])
        pieces[2] = Interval(mloc[("I", 0)][0], mloc[("a1y", 0)][0])
        pieces[1] = Interval(mloc[("a1y", 0)][0], lloc[("LN", 1)][0])
        pieces[3] = Interval(lloc[("LN", 1)][0], ONE)
        complete = Division(tuple(pieces))
        predicted[("complete", "egalitarian")] = Fraction(1, 4)
    notes = (
        f"{n} players in {k} groups of three plus one last player; discarding "
        f"the k separator intervals frees the whole right part for the last "
        f"player and a full block for every group member."
    )
    return ConstructionBundle(instance, complete, partial, predicted, notes)


# ---------------------------------------------------------------------------
# tight small-n egalitarian examples
# ---------------------------------------------------------------------------

def egalitarian_tight(n: int, eps: Fraction = Fraction(1, 100)) -> ConstructionBundle:
    eps = Fraction(eps)
    _require(n in (3, 4), "need n in {3, 4}")
    _require(ZERO < eps < Fraction(1, 20), "need 0 < eps < 1/20")
    if n == 3:
        p0 = make_valuation(
            [
                (ZERO, eps, HALF - eps),
                (Fraction(2, 3), Fraction(2, 3) + 3 * eps, 3 * eps),
                (ONE - eps, ONE, HALF - 2 * eps),
            ]
        )
        instance = Instance(
            (p0, uniform_valuation(), uniform_valuation()),
            label="egalitarian-tight-n3",
            params={"eps": eps, "n": Fraction(3)},
        )
        partial = Division(
            (
                Interval(ZERO, eps),
                Interval(eps, HALF),
                Interval(HALF, ONE - eps),
            )
        )
        third = Fraction(1, 3)
        complete = Division(
            (
                Interval(third * 2 + 2 * eps, ONE),
                Interval(ZERO, third + eps),
                Interval(third + eps, third * 2 + 2 * eps),
            )
        )
        predicted = {
            ("partial", "egalitarian"): HALF - eps,
            ("complete", "egalitarian"): third + eps,
        }
        notes = (
            "First player concentrated at both cake ends; any envy-free "
            "complete division caps the uniform players near 1/3 while "
            "discarding the right sliver gives everyone 1/2 - eps."
        )
        return ConstructionBundle(instance, complete, partial, predicted, notes)

    p0 = make_valuation(
        [
            (ZERO, eps, HALF - eps),
            (Fraction(3, 4), Fraction(3, 4) + 3 * eps, 3 * eps),
            (ONE - eps, ONE, HALF - 2 * eps),
        ]
    )
    p1 = make_valuation(
        [
            (eps, 2 * eps, 3 * eps),
            (Fraction(1, 4) - eps, Fraction(1, 4), HALF - 2 * eps),
            (HALF, HALF + eps, HALF - eps),
        ]
    )
    instance = Instance(
        (p0, p1, uniform_valuation(), uniform_valuation()),
        label="egalitarian-tight-n4",
        params={"eps": eps, "n": Fraction(4)},
    )
    partial = Division(
        (
            Interval(ZERO, 2 * eps),
            Interval(HALF, HALF + eps),
            Interval(2 * eps, HALF),
            Interval(HALF + eps, ONE - eps),
        )
    )
    complete = Division(
        (
            Interval(Fraction(3, 4) + 2 * eps, ONE),
            Interval(ZERO, Fraction(1, 4)),
            Interval(Fraction(1, 4), HALF + eps),
            Interval(HALF + eps, Fraction(3, 4) + 2 * eps),
        )
    )
    predicted = {("partial", "egalitarian"): HALF - 2 * eps}
    notes = (
        "Two concentrated players pin the end pieces of any envy-free "
        "complete division, squeezing the uniform players to about 1/4; "
        "discarding the right sliver lifts everyone to 1/2 - 2 eps."
    )
    return ConstructionBundle(instance, complete, partial, predicted, notes)


# ---------------------------------------------------------------------------
# Pareto-domination family
# ---------------------------------------------------------------------------

def pareto_family(n: int, eps: Optional[Fraction] = None) -> ConstructionBundle:
    _require(n > 2, "need n > 2")
    nF = Fraction(n)
    if eps is None:
        eps = 1 / (2 * nF * (nF + 1))
    eps = Fraction(eps)
    _require(ZERO < eps < 1 / (nF * (nF + 1)), "need 0 < eps < 1/(n(n+1))")

    players = []
    for i in range(n - 1):
        center = Fraction(i + 1, n)
        players.append(make_valuation([(center - eps, center + eps, ONE)]))
    players.append(uniform_valuation())
    instance = Instance(
        tuple(players),
        label=f"pareto-family-n{n}",
        params={"eps": eps, "n": nF},
    )

    pieces = [None] * n
    pieces[n - 1] = Interval(ZERO, 1 / nF)
    for i in range(n - 1):
        pieces[i] = Interval(Fraction(i + 1, n), Fraction(i + 2, n))
    complete = Division(tuple(pieces))

    pieces = [None] * n
    pieces[n - 1] = Interval(ZERO, 1 / nF)
    step = 1 / nF - eps
    pieces[0] = Interval(1 / nF, 2 / nF - 2 * eps)
    for i in range(1, n - 1):
        pieces[i] = Interval((i + 1) * step, (i + 2) * step)
    partial = Division(tuple(pieces))

    predicted = {
        ("complete", "utilitarian"): (nF - 1) / 2 + 1 / nF,
        ("complete", "egalitarian"): 1 / nF,
        ("partial", "utilitarian"): nF - Fraction(3, 2) + 1 / nF,
        ("partial", "egalitarian"): 1 / nF,
    }
    notes = (
        "Focused players each want a tiny strip around i/n. Every envy-free "
        "complete division cuts exactly at the points i/n; shifting pieces "
        "left after discarding a right sliver doubles all middle players."
    )
    return ConstructionBundle(instance, complete, partial, predicted, notes)


FAMILIES = {
    "intro": intro_two_player,
    "utilitarian": utilitarian_family,
    "egalitarian": egalitarian_family,
    "egalitarian-tight": egalitarian_tight,
    "pareto": pareto_family,
}

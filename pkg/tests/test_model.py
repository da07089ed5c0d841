from fractions import Fraction as F

import pytest

from cakecut import (
    Interval,
    NotNormalized,
    OverlappingPieces,
    OverlappingSegments,
    classify,
    make_valuation,
    refine,
    uniform_valuation,
    value_of,
    Instance,
)
from cakecut.families import egalitarian_tight, intro_two_player, pareto_family


def brute_value(valuation, left, right):
    """Independent integral: sum density * overlap cell by cell."""
    acc = F(0)
    for c in range(len(valuation.cell_masses)):
        lo, hi = valuation.breakpoints[c], valuation.breakpoints[c + 1]
        ov_lo, ov_hi = max(lo, left), min(hi, right)
        if ov_hi > ov_lo:
            acc += valuation.cell_masses[c] * (ov_hi - ov_lo) / (hi - lo)
    return acc


def test_uniform_half():
    assert value_of(uniform_valuation(), Interval(F(0), F(1, 2))) == F(1, 2)


def test_candy_strip_full_value():
    bundle = intro_two_player(F(1, 50), F(1, 100))
    bob = bundle.instance.players[1]
    strip = Interval(F(1, 2) - F(1, 200), F(1, 2) + F(1, 200))
    assert value_of(bob, strip) == 1


def test_focused_player_full_value():
    bundle = pareto_family(5)
    eps = bundle.instance.params["eps"]
    for i in range(4):
        center = F(i + 1, 5)
        piece = Interval(center - eps, center + eps)
        assert value_of(bundle.instance.players[i], piece) == 1


def test_value_against_brute_force():
    v = make_valuation([(F(0), F(1, 8), F(1, 2)), (F(1, 4), F(3, 4), F(1, 4)), (F(7, 8), F(1), F(1, 4))])
    probes = [F(a, 16) for a in range(17)]
    for left in probes:
        for right in probes:
            if left <= right:
                assert value_of(v, Interval(left, right)) == brute_value(v, left, right)


def test_make_valuation_uniform():
    v = make_valuation([(F(0), F(1), F(1))])
    assert v.breakpoints == (F(0), F(1))
    assert v.cell_masses == (F(1),)


def test_make_valuation_tight_player():
    eps = F(1, 100)
    v = make_valuation(
        [
            (F(0), eps, F(1, 2) - eps),
            (F(2, 3), F(2, 3) + 3 * eps, 3 * eps),
            (F(1) - eps, F(1), F(1, 2) - 2 * eps),
        ]
    )
    assert sum(v.cell_masses) == 1
    assert value_of(v, Interval(F(0), eps)) == F(1, 2) - eps


def test_make_valuation_mass_deficit():
    with pytest.raises(NotNormalized) as err:
        make_valuation([(F(0), F(1, 2), F(1, 4))])
    assert err.value.total == F(1, 4)


def test_make_valuation_overlap():
    with pytest.raises(OverlappingSegments):
        make_valuation([(F(0), F(1, 2), F(1, 2)), (F(1, 4), F(1), F(1, 2))])


def test_refine_two_uniform():
    inst = Instance((uniform_valuation(), uniform_valuation()))
    assert refine(inst).cells == (F(0), F(1))


def test_refine_intro():
    delta = F(1, 100)
    bundle = intro_two_player(F(1, 50), delta)
    cells = refine(bundle.instance).cells
    assert cells == (F(0), F(1, 2) - delta / 2, F(1, 2) + delta / 2, F(1))


def test_refine_contains_focused_breakpoints():
    bundle = pareto_family(3)
    eps = bundle.instance.params["eps"]
    cells = set(refine(bundle.instance).cells)
    for pt in (F(1, 3) - eps, F(1, 3) + eps, F(2, 3) - eps, F(2, 3) + eps):
        assert pt in cells


def test_refine_idempotent():
    bundle = egalitarian_tight(4, F(1, 100))
    part = refine(bundle.instance)
    again = refine(bundle.instance)
    assert part.cells == again.cells
    for v in bundle.instance.players:
        assert set(v.breakpoints) <= set(part.cells)


def test_classify_complete():
    d = classify_division([(0, F(1, 2)), (F(1, 2), 1)])
    assert d.complete and not d.leftovers


def classify_division(pairs):
    from cakecut import Division

    return classify(Division(tuple(Interval(F(a), F(b)) for a, b in pairs)))


def test_classify_partial_right_sliver():
    eps = F(1, 100)
    cls = classify_division([(0, F(1, 2)), (F(1, 2), 1 - eps)])
    assert not cls.complete
    assert cls.leftovers == (Interval(1 - eps, F(1)),)


def test_classify_overlap():
    with pytest.raises(OverlappingPieces):
        classify_division([(0, F(3, 5)), (F(1, 2), 1)])


def test_classify_ignores_empty_pieces():
    cls = classify_division([(0, 1), (F(1, 2), F(1, 2))])
    assert cls.complete


def test_interval_validation():
    with pytest.raises(ValueError):
        Interval(F(3, 4), F(1, 4))
    with pytest.raises(ValueError):
        Interval(F(-1, 4), F(1, 4))

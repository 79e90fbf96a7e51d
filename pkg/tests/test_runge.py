import random
from fractions import Fraction
from math import log

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from a22 import characteristics as ch
from a22 import runge
from a22 import symplectic as sp
from a22 import variety as v
from a22.errors import PreconditionError
from reference import POINT_Q, ZERO_FREE, zero_free_pool

INF = runge.PlaceDescriptor.infinite()
TWO = runge.PlaceDescriptor.finite(2)
THREE = runge.PlaceDescriptor.finite(3)


def test_place_absolute_values():
    assert TWO.abs(12) == Fraction(1, 4)
    assert TWO.abs(Fraction(3, 8)) == 8
    assert THREE.abs(0) == 0
    assert INF.abs(-5) == 5
    assert TWO.two_three() == Fraction(1, 2)
    assert THREE.two_three() == Fraction(1, 3)
    assert runge.PlaceDescriptor.finite(5).two_three() == 1
    with pytest.raises(ValueError):
        runge.PlaceDescriptor("finite")


def test_thresholds_are_exact_rationals():
    assert runge.small_threshold(INF) == Fraction(1, 27)
    assert runge.floor_constant(INF) == Fraction(51, 1000)
    assert runge.small_threshold(TWO) == 1


def test_small_set_at_q():
    mags = [abs(x) for x in POINT_Q]
    rep = runge.small_coordinate_set(mags, INF)
    assert rep.indices == (1, 2, 5, 6, 9, 10)
    assert rep.verdict
    assert rep.goepel_complement == (1, 2, 5, 6, 9, 10)


def test_equal_magnitudes_give_empty_small_set():
    assert runge.small_coordinate_set([3] * 10, INF).indices == ()


def test_five_small_off_complements_fails_verdict():
    mags = [0, 0, 0, 0, 0, 1, 1, 1, 1, 1]
    rep = runge.small_coordinate_set(mags, INF)
    assert not rep.verdict


def test_all_zero_rejected():
    with pytest.raises(PreconditionError):
        runge.small_coordinate_set([0] * 10, INF)


def test_interval_mode_is_conservative():
    # 1/27 * 27 = 1 is not strictly small exactly, but may be small under rounding
    mags = [1] + [27] * 9
    assert runge.small_coordinate_set(mags, INF).indices == ()
    assert runge.small_coordinate_set(mags, INF, rel_err=1e-12).indices == (1,)
    # the floor check only passes when the lower end clears the bound
    edge = [Fraction(51, 1000)] * 4 + [1] * 6
    assert runge.goepel_floor_check(edge, (1, 2, 3, 4), INF)
    assert not runge.goepel_floor_check(edge, (1, 2, 3, 4), INF, rel_err=1e-12)


def test_goepel_floor_trivial_with_maximal_coordinate():
    for q in ch.goepel_quadruples():
        idx = ch.indices(q)
        mags = [1 if i == idx[0] else 0 for i in range(1, 11)]
        assert runge.goepel_floor_check(mags, idx, INF)
        assert runge.goepel_floor_check(mags, idx, TWO)


def test_factor_two_is_needed_at_two():
    # a 2-adic lift of (0:0:0:0:1:1:1:1:1:1) has |x| <= |2| on the quadruple {1,2,3,4}
    mags = [Fraction(1, 2)] * 4 + [1] * 6
    assert runge.goepel_floor_check(mags, (1, 2, 3, 4), TWO)
    # without the |2| factor the same point would violate the floor
    assert not any(m >= 1 for m in mags[:4])


def test_choose_coordinate_tie():
    pt = v.ProjectivePoint.of((1,) * 10)
    assert runge.choose_coordinate(pt, [INF, INF]) == 1


def test_choose_coordinate_preconditions():
    with pytest.raises(PreconditionError):
        runge.choose_coordinate(v.ProjectivePoint.of(POINT_Q), [INF, TWO])
    with pytest.raises(PreconditionError):
        runge.choose_coordinate(v.ProjectivePoint.of(ZERO_FREE[0], 5), [INF, TWO])
    with pytest.raises(PreconditionError):
        runge.choose_coordinate(v.ProjectivePoint.of(ZERO_FREE[0]), [INF])


def _pool_with_images():
    rng = random.Random(4)
    group = sp.enumerate_group()
    pts = zero_free_pool()
    return pts + [v.apply_signed_map(p, M) for p in pts for M in rng.sample(group, 3)]


@pytest.mark.parametrize("places", [(INF, TWO), (INF, THREE), (TWO, THREE)])
def test_choose_coordinate_satisfies_both_inequalities(places):
    for pt in _pool_with_images():
        i = runge.choose_coordinate(pt, places)
        assert all(runge.satisfies_choice_inequality(pt, i, pl) for pl in places)


def test_large_small_set_forces_choice_into_goepel_quadruple():
    seen = 0
    for pt in _pool_with_images():
        for pl in (TWO, THREE):
            rep = runge.small_coordinate_set([pl.abs(x) for x in pt.coords], pl)
            if len(rep.indices) > 4:
                seen += 1
                quad = set(range(1, 11)) - set(rep.goepel_complement)
                assert runge.choose_coordinate(pt, [pl, INF]) in quad
    assert seen > 0


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(ZERO_FREE), st.integers(0, 6), st.sampled_from([1, -1]))
def test_power_of_two_scaling_is_harmless(coords, k, sign):
    pt = v.ProjectivePoint.of(tuple(sign * 2**k * c for c in coords))
    i = runge.choose_coordinate(pt, [INF, TWO])
    assert runge.satisfies_choice_inequality(pt, i, INF)
    assert runge.satisfies_choice_inequality(pt, i, TWO)


def test_runge_bound_generic():
    rep = runge.runge_bound()
    assert rep.height_bound == pytest.approx(log(27) + 6 * log(2) + log(3), abs=1e-12)
    assert rep.height_bound == pytest.approx(8.553332, abs=1e-6)
    assert rep.height_bound <= 8.6
    assert rep.faltings_bound == 985.0 and rep.faltings_source == "recorded"


def test_runge_bound_with_two_in_s():
    rep = runge.runge_bound(contains_place_over_2=True, contains_place_over_3=False)
    assert rep.height_bound == pytest.approx(3.988984, abs=1e-6)
    assert rep.height_bound <= 4


def test_runge_bound_ledger_property():
    for c2 in (False, True):
        for c3 in (False, True):
            if c2 and c3:
                with pytest.raises(PreconditionError):
                    runge.runge_bound(c2, c3)
                continue
            rep = runge.runge_bound(c2, c3)
            assert all(val >= 0 for _, val in rep.contributions)
            assert rep.height_bound == sum(val for _, val in rep.contributions)


def test_faltings_is_pluggable():
    rep = runge.runge_bound(faltings=lambda h: (h * 100, "test"))
    assert rep.faltings_source == "test"
    assert runge.recorded_faltings(9.0) == (None, "unavailable")

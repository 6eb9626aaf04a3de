from math import factorial

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from prodbase.constructions import families as fam
from prodbase.constructions.specstr import build
from prodbase.distinguishing import (
    SetPartition, bounds_check, check_dagger, check_ddagger, count_ordered_colorings, count_tm,
    distinguishing_mask, distinguishing_number, distinguishing_partitions, is_distinguishing,
    power_set_data, power_set_regular_orbits, restricted_growth_strings, stirling2, t2_by_sweep,
)
from prodbase.perm import Permutation, PermutationGroup

import oracles

TOPS = ["s:2", "c:2", "s:3", "c:3", "c:4", "d:4", "c:5", "d:5", "a:4", "s:4", "c:6", "d:6",
        "a:5@6", "hol8", "iwr:s:2|c:2"]


def group(spec):
    return build(spec).group


@st.composite
def top_groups(draw):
    k = draw(st.integers(2, 7))
    gens = draw(st.lists(st.permutations(list(range(k))).map(Permutation), min_size=1, max_size=2))
    return PermutationGroup(gens, degree=k)


@given(st.integers(0, 9), st.integers(0, 9))
def test_stirling_recurrence_and_rgs_count(k, m):
    if k >= 1 and m >= 1:
        assert stirling2(k, m) == m * stirling2(k - 1, m) + stirling2(k - 1, m - 1)
    if k <= 7:
        assert sum(1 for _ in restricted_growth_strings(k, m)) == stirling2(k, m)


def test_stirling_known_values():
    assert [stirling2(5, m) for m in range(1, 6)] == [1, 15, 25, 10, 1]


@pytest.mark.parametrize("spec", TOPS)
def test_distinguishing_number_against_brute_force(spec):
    P = group(spec)
    assert distinguishing_number(P) == oracles.distinguishing_number(oracles.elements(P), P.degree)


@pytest.mark.parametrize("spec", TOPS)
def test_tm_against_brute_force(spec):
    P = group(spec)
    E = oracles.elements(P)
    for m in range(2, min(P.degree, 5) + 1):
        t = count_tm(P, m).t
        assert t == oracles.t_count(E, P.degree, m)
        assert bounds_check(P.order(), P.degree, m, t)


@settings(max_examples=25, deadline=None)
@given(top_groups(), st.integers(2, 4))
def test_tm_random_groups(P, m):
    E = oracles.elements(P)
    res = count_tm(P, m)
    assert res.t == oracles.t_count(E, P.degree, m)
    assert bounds_check(P.order(), P.degree, m, res.t)
    if res.ordered is not None:
        assert res.ordered == factorial(m) * res.t


@settings(max_examples=25, deadline=None)
@given(top_groups(), st.data())
def test_mask_agrees_with_stabilizer_intersection(P, data):
    labels = data.draw(st.lists(st.integers(0, 2), min_size=P.degree, max_size=P.degree))
    part = SetPartition.from_labels(labels)
    assert bool(distinguishing_mask(P, np.array(labels))[0]) == is_distinguishing(P, part)


@pytest.mark.parametrize("spec", ["c:5", "d:6", "s:4", "hol8", "c:8", "a:5@6"])
def test_sweep_agrees_with_rgs(spec):
    P = group(spec)
    from prodbase.distinguishing import _rgs_array
    assert t2_by_sweep(P) == int(distinguishing_mask(P, _rgs_array(P.degree, 2)).sum())


def test_cyclic_prime_tm_is_stirling():
    P = fam.cyclic(5)
    for m in range(2, 6):
        assert count_tm(P, m).t == stirling2(5, m)



def test_symmetric_needs_discrete_partition():
    for n in range(2, 7):
        P = fam.symmetric(n)
        assert distinguishing_number(P) == n
        assert count_tm(P, n).t == 1


def test_power_set_two_points():
    P = fam.symmetric(2)
    reg = power_set_regular_orbits(P)
    assert reg.count == 1
    assert check_ddagger(P)


def test_o4_minus_power_set():
    P = fam.affine_o4_minus_2()
    data = power_set_data(P)
    assert power_set_regular_orbits(P, data=data).count == 2
    assert power_set_regular_orbits(P, exclude_half=True, data=data).count == 0
    assert distinguishing_number(P) == 2


def test_dagger():
    assert check_dagger(fam.symmetric(2), 2)
    # a 2-subset of 3 points meets each of its images
    assert not check_dagger(fam.cyclic(3), 2)


def test_ordered_colorings_small():
    # C2 on 2 points: the colorings (0,1) and (1,0) are swapped, neither is fixed
    assert count_ordered_colorings(fam.cyclic(2), 2) == 2


def test_partitions_listed_are_distinguishing():
    P = group("a:5@6")
    parts = distinguishing_partitions(P, 3)
    assert len(parts) == 10
    assert all(is_distinguishing(P, p) for p in parts)
    assert len({p.blocks for p in parts}) == 10


def test_bounds_check_rejects_bad_values():
    assert not bounds_check(120, 5, 2, 100)
    assert not bounds_check(120, 5, 2, 1)
    assert bounds_check(60, 6, 3, 10)
    assert bounds_check(60, 6, 2, 0)

import random
from itertools import product as iproduct

import pytest
from hypothesis import given, settings, strategies as st

from prodbase.base import base_size_exact, regular_orbit_count
from prodbase.constructions import families as fam
from prodbase.constructions.product import product_type_subgroup, wreath_product_action
from prodbase.constructions.specstr import build, build_action
from prodbase.distinguishing import SetPartition, distinguishing_number
from prodbase.errors import ConsistencyError
from prodbase.product import (
    analyze_wreath, bc_predict, is_soluble, leading_union_m, overgroup_base_witness,
    product_base_pair_test, r_wreath, r_wreath_formula, r_wreath_prime_cyclic,
    r_wreath_symmetric, regular_suborbit_count_L, structural_checks, sufficient_base2_general,
    tm_profile, unique_regular_suborbit_test, wreath_sum,
)

import oracles

TOPS = ["c:2", "s:2", "c:3", "s:3", "c:4", "d:4", "s:4", "c:5", "d:5", "a:4", "c:6",
        "a:5@6", "hol8", "iwr:s:2|c:2", "c:7"]

# (L, P) with |Gamma|^k small enough to build the product action directly
SMALL_WREATHS = [("s:3", "c:2"), ("d:5", "c:2"), ("d:5", "s:2"), ("d:7", "c:2"), ("c:5", "c:2"),
                 ("s:3", "s:3"), ("d:5", "c:3"), ("a:4", "c:2"), ("a:5@6", "c:2"),
                 ("d:4", "s:3"), ("a:5", "s:2"), ("d:6", "c:2")]


def group(spec):
    return build(spec).group


@pytest.mark.parametrize("Lspec,Pspec", SMALL_WREATHS)
def test_regular_suborbit_formula_against_product_action(Lspec, Pspec):
    L, P = group(Lspec), group(Pspec)
    W = wreath_product_action(L, P)
    brute = regular_orbit_count(W.stabilizer()).count
    assert r_wreath(regular_suborbit_count_L(L), P) == brute


@pytest.mark.parametrize("Lspec,Pspec", SMALL_WREATHS)
def test_base_size_criterion_against_product_action(Lspec, Pspec):
    L, P = group(Lspec), group(Pspec)
    pred, _ = bc_predict(L, P)
    assert pred == base_size_exact(wreath_product_action(L, P).ambient).b


def test_stabilizer_hint_matches_element_filter():
    W = wreath_product_action(group("d:5"), group("c:2"))
    E = oracles.elements(W.ambient)
    assert E.shape[0] == 200
    assert W.stabilizer().order() == int((E[:, 0] == 0).sum())


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 8), st.sampled_from(TOPS))
def test_sum_divisible_by_top_order(r, Pspec):
    P = group(Pspec)
    tm = tm_profile(P, r)
    total = wreath_sum(r, tm)
    assert total % P.order() == 0
    if distinguishing_number(P) >= 2:
        assert total % 2 == 0


@given(st.integers(0, 12), st.integers(2, 6))
def test_symmetric_specialization(r, k):
    P = fam.symmetric(k)
    assert r_wreath_symmetric(r, k) == r_wreath_formula(r, tm_profile(P, r), P.order())


@given(st.integers(0, 12), st.sampled_from([2, 3, 5, 7]))
def test_prime_cyclic_specialization(r, p):
    P = fam.cyclic(p)
    assert r_wreath_prime_cyclic(r, p) == r_wreath_formula(r, tm_profile(P, r), P.order())


def test_indivisible_sum_is_reported():
    with pytest.raises(ConsistencyError):
        r_wreath_formula(1, {1: 1}, 2)


@pytest.mark.parametrize("k", [2, 3, 4, 5])
def test_unique_regular_orbit_symmetric(k):
    holds, reason = unique_regular_suborbit_test(k, fam.symmetric(k))
    assert holds and "symmetric" in reason
    assert r_wreath(k, fam.symmetric(k)) == 1
    assert not unique_regular_suborbit_test(k + 1, fam.symmetric(k))[0]


@pytest.mark.parametrize("spec,D", [("a:5@6", 3), ("pgammal2:8", 3), ("agl:3:2", 4)])
def test_unique_regular_orbit_primitive_cases(spec, D):
    P = group(spec)
    holds, _ = unique_regular_suborbit_test(D, P)
    assert holds
    assert r_wreath(D, P) == 1


def _pair_test_exhaustive(Lspec, Pspec):
    L, P = group(Lspec), group(Pspec)
    W = wreath_product_action(L, P)
    E = oracles.elements(W.ambient)
    n = W.degree
    for a, b in iproduct(range(n), repeat=2):
        trivial = oracles.pointwise_stabilizer_elements(E, (a, b)).shape[0] == 1
        assert product_base_pair_test(W.space, L, P, a, b) == trivial, (a, b)


def test_pair_test_exhaustive_s3_wr_s2():
    _pair_test_exhaustive("s:3", "s:2")


def test_pair_test_exhaustive_d5_wr_c2():
    _pair_test_exhaustive("d:5", "c:2")


def test_leading_union():
    parts = [SetPartition.from_labels([0, 0, 1, 2]), SetPartition.from_labels([0, 1, 1, 1])]
    assert leading_union_m(parts, 2)[0] == 1
    assert leading_union_m(parts, 3)[0] == 2
    assert leading_union_m(parts, 4) is None


def test_soluble():
    assert is_soluble(fam.symmetric(4))
    assert not is_soluble(fam.alternating(5))


def _extra(L, T, k, pattern):
    outer = [g for g in L.gen_arrays if not T.contains(g)]
    return [([outer[0] if c == "a" else None for c in pattern], None)]


@pytest.mark.parametrize("spec", ["pgl2:7/pairs", "pgl2:9/pairs", "pgl2:11/cosets:N(V4)"])
@pytest.mark.parametrize("k", [2, 3])
def test_certificate_witness_is_a_base(spec, k):
    L = build_action(spec)
    T = L.derived_subgroup()
    W = product_type_subgroup(L, T, fam.cyclic(k), _extra(L, T, k, "a" * k))
    cert = sufficient_base2_general(W)
    assert cert.verdict == "guaranteed"
    # independent of the orbit-length check used inside the criterion
    assert W.ambient.pointwise_stabilizer(list(cert.witness)).order() == 1


def test_certificate_unknown_without_regular_suborbits():
    L = build_action("pgammal2:9/pairs")
    T = L.derived_subgroup()
    a, b = L.gen_arrays[3], L.gen_arrays[4]
    W = product_type_subgroup(L, T, fam.symmetric(2), [([a, a], None), ([b, b], None)])
    cert = sufficient_base2_general(W)
    assert cert.verdict == "unknown" and cert.witness is None


def test_overgroup_witness_is_a_base():
    L = build_action("pgammal2:9/pairs")
    T = L.derived_subgroup()
    gens = L.gen_arrays
    a, b = gens[3], gens[4]
    W = product_type_subgroup(L, T, fam.symmetric(2), [([a, a], None), ([b, b], None)])
    assert W.tau == 0
    A = L.subgroup(list(T.gen_arrays) + [a])
    B = L.subgroup(list(T.gen_arrays) + [b])
    wit = overgroup_base_witness(W, [A, B])
    assert wit is not None
    assert W.ambient.pointwise_stabilizer(list(wit)).order() == 1


def test_structural_checks_m10():
    L = build_action("m10/cosets:N(C5)")
    T = L.derived_subgroup()
    W = product_type_subgroup(L, T, fam.symmetric(2), _extra(L, T, 2, "aa"))
    checks = structural_checks(W)
    assert all(c.holds is not False for c in checks)
    assert any(c.applicable for c in checks)


@pytest.mark.parametrize("Lspec,Pspec", [("s:3", "c:2"), ("d:5", "c:2"), ("a:4", "c:2")])
def test_structural_checks_small_wreaths(Lspec, Pspec):
    L, P = group(Lspec), group(Pspec)
    W = wreath_product_action(L, P)
    checks = structural_checks(W)
    dich = next(c for c in checks if c.name == "base size dichotomy")
    assert dich.holds is not False


def test_analyze_wreath_direct():
    an = analyze_wreath(group("pgl2:7/pairs"), fam.cyclic(2), direct=True)
    assert an.predicted_b == an.direct_b == 3
    assert an.r_wreath == an.direct_r == 0


def test_random_fixture_combinations_divisible():
    rng = random.Random(7)
    for _ in range(50):
        r = rng.randint(0, 10)
        P = group(rng.choice(TOPS))
        assert wreath_sum(r, tm_profile(P, r)) % P.order() == 0


def test_pair_test_same_coordinate_orbit_is_not_a_base():
    # (0,1) and (0,2) lie in one S3-orbit on pairs, so the partition has a single block
    L, P = fam.symmetric(3), fam.symmetric(2)
    W = wreath_product_action(L, P)
    beta = W.space.encode([1, 2])
    assert not product_base_pair_test(W.space, L, P, 0, beta)
    assert W.ambient.pointwise_stabilizer([0, beta]).order() == 2
    L55 = build_action("psl2:11/cosets:N(C6)")
    W55 = wreath_product_action(L55, fam.cyclic(2))
    x = regular_orbit_count(L55.point_stabilizer(0)).orbit_reps[0]
    assert not product_base_pair_test(W55.space, L55, fam.cyclic(2), 0, W55.space.encode([x, x]))

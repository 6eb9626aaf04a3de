import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from prodbase.errors import DegreeMismatch, MalformedGenerator
from prodbase.perm import Permutation, PermutationGroup, minimal_block
from prodbase.constructions import families as fam

import oracles


def perms(n):
    return st.permutations(list(range(n))).map(Permutation)


@st.composite
def small_groups(draw, max_degree=7):
    n = draw(st.integers(2, max_degree))
    gens = draw(st.lists(perms(n), min_size=1, max_size=3))
    return PermutationGroup(gens, degree=n)


def test_composition_is_left_to_right():
    p = Permutation([1, 2, 0])
    q = Permutation([0, 2, 1])
    pq = p * q
    assert all(pq(i) == q(p(i)) for i in range(3))


def test_malformed_generators_are_rejected():
    with pytest.raises(MalformedGenerator):
        Permutation([0, 0, 1])
    with pytest.raises(MalformedGenerator):
        Permutation([0, 3, 1])
    with pytest.raises(DegreeMismatch):
        PermutationGroup([[1, 0], [1, 2, 0]])


def test_cycles_and_order():
    p = Permutation.from_cycles(6, (0, 1, 2), (3, 4))
    assert p.order() == 6
    assert (p ** 6).is_identity()


@given(perms(6), perms(6), perms(6))
def test_group_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert (a * a.inverse()).is_identity()


@settings(max_examples=40, deadline=None)
@given(small_groups())
def test_chain_order_matches_enumeration(G):
    E = oracles.elements(G)
    assert G.order() == E.shape[0]
    assert G.elements().shape[0] == E.shape[0]


@settings(max_examples=40, deadline=None)
@given(small_groups(), st.data())
def test_orbit_stabilizer(G, data):
    x = data.draw(st.integers(0, G.degree - 1))
    assert len(G.orbit(x)) * G.point_stabilizer(x).order() == G.order()


@settings(max_examples=30, deadline=None)
@given(small_groups(), st.data())
def test_pointwise_stabilizer_matches_filter(G, data):
    pts = data.draw(st.lists(st.integers(0, G.degree - 1), max_size=3, unique=True))
    E = oracles.elements(G)
    assert G.pointwise_stabilizer(pts).order() == oracles.pointwise_stabilizer_elements(E, pts).shape[0]


@settings(max_examples=30, deadline=None)
@given(small_groups(), st.data())
def test_setwise_stabilizer_matches_filter(G, data):
    subset = data.draw(st.lists(st.integers(0, G.degree - 1), max_size=4, unique=True))
    E = oracles.elements(G)
    s = sorted(subset)
    want = sum(1 for g in E if sorted(g[s].tolist()) == s)
    assert G.setwise_stabilizer(subset).order() == want


@settings(max_examples=30, deadline=None)
@given(small_groups())
def test_contains_generated_elements(G):
    for g in oracles.elements(G)[:20]:
        assert G.contains(g)


@pytest.mark.parametrize("G,order", [
    (fam.symmetric(6), 720), (fam.alternating(7), 2520), (fam.psl2(11), 660),
    (fam.pgl2(9), 720), (fam.pgammal2(8), 1512), (fam.m10(), 720),
    (fam.affine_gl(3, 2), 1344),
])
def test_family_orders_against_closure(G, order):
    assert G.order() == order == oracles.elements(G).shape[0]


def test_conjugacy_classes_partition_the_group():
    G = fam.symmetric(5)
    cls = G.conjugacy_classes()
    assert sum(cls.sizes) == 120
    assert sorted(cls.sizes) == [1, 10, 15, 20, 20, 24, 30]


def test_primitivity_and_blocks():
    assert fam.symmetric(5).is_primitive()
    D = fam.dihedral(6)
    assert not D.is_primitive()
    block = minimal_block(D.gen_arrays, 6, 0, 3)
    assert 0 in block and 3 in block and len(block) < 6


def test_derived_subgroup_and_normality():
    S = fam.symmetric(5)
    A = S.derived_subgroup()
    assert A.order() == 60
    assert S.is_normal_subgroup(A)
    assert not S.is_normal_subgroup(S.point_stabilizer(0))


def test_minimal_degree():
    assert fam.symmetric(6).minimal_degree() == 2
    assert fam.alternating(6).minimal_degree() == 3

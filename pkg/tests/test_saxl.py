import numpy as np
import pytest

from prodbase.constructions import families as fam
from prodbase.constructions.product import wreath_product_action
from prodbase.constructions.specstr import build, build_action
from prodbase.errors import NoSaxlGraph
from prodbase.product import bc_predict
from prodbase.saxl import (
    SaxlGraph, check_eulerian, check_star, check_star_star, check_star_star_double_coset,
    is_power_of_two, psl2_pairs_orbit_atlas, saxl_diameter, saxl_dot, saxl_neighborhood,
    saxl_summary,
)

import oracles

BASE_TWO = ["pgl2:7/pairs", "psl2:11/cosets:N(C6)", "a:5@10", "d:5", "s:3", "c:5",
            "psl2:7/pairs", "m10/cosets:N(C8)", "agl:1:7"]


def group(spec):
    return build(spec).group


@pytest.mark.parametrize("spec", BASE_TWO)
def test_graph_against_brute_force(spec):
    G = group(spec)
    E = oracles.elements(G)
    adj = oracles.saxl_adjacency(E, G.degree)
    S = SaxlGraph(G)
    for v in range(G.degree):
        assert S.neighborhood(v).tolist() == np.nonzero(adj[v])[0].tolist()
    assert saxl_neighborhood(G).size == adj[0].sum()
    d, connected = saxl_diameter(G)
    want = oracles.diameter(adj)
    assert (d if connected else None) == want
    star = check_star(G)
    assert star == oracles.common_neighbour_everywhere(adj)
    star2 = check_star_star(G)
    assert star2 == oracles.neighbourhoods_meet_regular_suborbits(E, G.degree, adj)
    # (**) => (*) => diameter <= 2
    if star2:
        assert star
    if star:
        assert want is not None and want <= 2


@pytest.mark.parametrize("spec", ["psl2:11/cosets:N(C6)", "pgl2:7/pairs", "a:5@10", "d:5"])
def test_double_coset_route_agrees(spec):
    G = group(spec)
    assert check_star_star_double_coset(G) == check_star_star(G)


def test_m10_valency_is_power_of_two():
    rep = saxl_summary(group("m10/cosets:N(C8)"))
    assert rep.valency == 32 == rep.r * rep.h_order
    assert is_power_of_two(rep.valency)
    assert rep.eulerian


@pytest.mark.parametrize("Lspec,Pspec", [("d:5", "c:2"), ("d:5", "c:3"), ("c:5", "c:2"),
                                         ("d:7", "c:2"), ("c:5", "c:3"), ("d:9", "s:2")])
def test_base_two_wreaths_are_eulerian(Lspec, Pspec):
    L, P = group(Lspec), group(Pspec)
    W = wreath_product_action(L, P)
    pred, _ = bc_predict(L, P)
    assert pred == 2
    rep = saxl_summary(W.ambient)
    assert rep.eulerian and check_eulerian(rep.valency)


def test_no_saxl_graph_without_base_two():
    with pytest.raises(NoSaxlGraph):
        SaxlGraph(fam.symmetric(5))


def test_trivial_stabilizer_has_no_loops():
    S = SaxlGraph(fam.cyclic(5))
    assert S.valency == 4
    assert 0 not in S.neighborhood(0).tolist()


def test_dot_export():
    text = saxl_dot(fam.cyclic(4))
    assert text.startswith("graph saxl {")
    assert text.count("--") == 6


@pytest.mark.parametrize("q,count", [(7, 3), (9, 4), (11, 4), (13, 5), (17, 6), (25, 8)])
def test_orbit_atlas_counts(q, count):
    atlas = psl2_pairs_orbit_atlas(q)
    assert atlas.count == atlas.expected_count == count
    assert sum(lab.startswith("R1/R2") for lab, _ in atlas.regular_orbits) == 2
    G = fam.induced_on_pairs(fam.psl2(q))
    assert SaxlGraph(G).r == count


def test_psl2_pairs_summary():
    rep = saxl_summary(build_action("psl2:11/cosets:N(C6)"), diameter=True, stars=True)
    assert (rep.valency, rep.diameter, rep.star_star) == (24, 2, True)

from .chain import StabilizerChain, schreier_sims
from .group import (
    ConjugacyClasses,
    PermutationGroup,
    orbit_labels,
    orbit_of,
)
from .permutation import Permutation, act, compose, identity, inverse
from .search import minimal_block


def build_chain(G: PermutationGroup) -> StabilizerChain:
    return G.chain()


def orbits(G: PermutationGroup, seed: int):
    """Sorted orbit of seed together with a transversal dict."""
    return G.orbit_transversal(seed)


def all_orbits(G: PermutationGroup):
    return G.all_orbits()


def point_stabilizer(G: PermutationGroup, point: int) -> PermutationGroup:
    return G.point_stabilizer(point)


def pointwise_stabilizer(G: PermutationGroup, points) -> PermutationGroup:
    return G.pointwise_stabilizer(points)


def setwise_stabilizer(G: PermutationGroup, subset) -> PermutationGroup:
    return G.setwise_stabilizer(subset)


def enumerate_elements(G: PermutationGroup, bound: int = 10**7) -> list[Permutation]:
    return [Permutation._wrap(row) for row in G.elements(bound)]


def conjugacy_classes(G: PermutationGroup, bound: int = 10**7) -> ConjugacyClasses:
    return G.conjugacy_classes(bound)


def is_transitive(G: PermutationGroup) -> bool:
    return G.is_transitive()


def is_primitive(G: PermutationGroup) -> bool:
    return G.is_primitive()


def minimal_degree(G: PermutationGroup, bound: int = 10**7) -> int:
    return G.minimal_degree(bound)


__all__ = [
    "ConjugacyClasses", "Permutation", "PermutationGroup", "StabilizerChain",
    "act", "all_orbits", "build_chain", "compose", "conjugacy_classes",
    "enumerate_elements", "identity", "inverse", "is_primitive", "is_transitive",
    "minimal_block", "minimal_degree", "orbit_labels", "orbit_of", "orbits",
    "point_stabilizer", "pointwise_stabilizer", "schreier_sims", "setwise_stabilizer",
]

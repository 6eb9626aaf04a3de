"""Deterministic brute-force subgroup searches used to build coset-action fixtures.

Each search walks the lexicographically sorted element list, so the chosen
subgroup depends only on the generators (and hence on the pinned field tables).
"""
from __future__ import annotations

import numpy as np

from ..errors import InputError
from ..perm import Permutation, PermutationGroup
from ..perm.permutation import invert_array


def _orders(E: np.ndarray) -> np.ndarray:
    """Element orders for an element array."""
    n = E.shape[1]
    ident = np.arange(n)
    out = np.zeros(E.shape[0], dtype=np.int64)
    cur = E.copy()
    k = 1
    todo = np.ones(E.shape[0], dtype=bool)
    while todo.any():
        done = todo & np.all(cur == ident, axis=1)
        out[done] = k
        todo &= ~done
        cur = np.take_along_axis(E, cur, axis=1)
        k += 1
    return out


def first_element_of_order(G: PermutationGroup, order: int,
                           inside: PermutationGroup | None = None) -> np.ndarray:
    E = (inside or G).elements()
    hits = np.nonzero(_orders(E) == order)[0]
    if hits.size == 0:
        raise InputError(f"no element of order {order}")
    return E[hits[0]]


def cyclic_normalizer(G: PermutationGroup, order: int,
                      inside: PermutationGroup | None = None) -> PermutationGroup:
    """Normalizer in G of <x>, x the first element of the given order (optionally within a subgroup)."""
    x = first_element_of_order(G, order, inside)
    K = G.subgroup([x], order=order)
    return G.normalizer_by_enumeration(K)


def klein_normalizer(G: PermutationGroup, inside: PermutationGroup | None = None) -> PermutationGroup:
    """Normalizer in G of the first Klein four-group <x, y> (x < y involutions, commuting)."""
    E = (inside or G).elements()
    inv = E[_orders(E) == 2]
    x = inv[0]
    for y in inv[1:]:
        if np.array_equal(y[x], x[y]):
            V = G.subgroup([x, y], order=4)
            return G.normalizer_by_enumeration(V)
    raise InputError("no Klein four-subgroup found")


def set_stabilizer(G: PermutationGroup, subset) -> PermutationGroup:
    return G.setwise_stabilizer(subset)


def parse_subgroup(G: PermutationGroup, text: str, socle: PermutationGroup | None = None) -> PermutationGroup:
    """Subgroup recipes: N(Cn), N(V4), stab{a,b,...}, pt (a point stabilizer)."""
    t = text.strip()
    if t.startswith("N(C") and t.endswith(")"):
        return cyclic_normalizer(G, int(t[3:-1]), socle)
    if t == "N(V4)":
        return klein_normalizer(G, socle)
    if t.startswith("stab{") and t.endswith("}"):
        pts = [int(x) for x in t[5:-1].split(",") if x.strip()]
        return G.setwise_stabilizer(pts)
    if t == "pt":
        return G.point_stabilizer(0)
    raise InputError(f"unknown subgroup recipe {text!r}")


def is_semidihedral16(H: PermutationGroup) -> bool:
    if H.order() != 16:
        return False
    counts = np.bincount(_orders(H.elements()), minlength=9)
    return counts[2] == 5 and counts[4] == 6 and counts[8] == 4


def element_order_profile(G: PermutationGroup) -> dict[int, int]:
    o = _orders(G.elements())
    vals, counts = np.unique(o, return_counts=True)
    return dict(zip(vals.tolist(), counts.tolist()))
